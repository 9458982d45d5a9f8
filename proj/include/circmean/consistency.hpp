#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "circmean/measure.hpp"

namespace circmean {

/// Strictly increasing lower-bound function ρ on (0, π) built from a
/// nonnegative gap function with a unique zero: ρ(θ) = (1/θ)∫₀^θ g, with
/// g(t) the infimum of the gap at circle distance ≥ t from the zero.
class RhoFunction {
public:
    /// f must be continuous in the circular sense, nonnegative, and vanish
    /// at a unique point of [-π, π); throws if a second zero (or a flat
    /// zero plateau) is detected on the evaluation grid.
    static RhoFunction from_gap(const std::function<double(double)>& f, int grid = 8192);

    /// ρ(θ) for θ in [0, π]; ρ(0) = 0.
    double operator()(double theta) const;

    double zero_location() const { return theta0_; }

private:
    RhoFunction() = default;
    double theta0_ = 0.0;
    double step_ = 0.0;
    std::vector<double> g_;           // g at grid nodes t_j = j·step
    std::vector<double> g_integral_;  // left-Riemann prefix integral of g
};

/// Deviation envelope C(s)·√(x/n) with C(s) = 4π² + 4π²·s + 2s.
double concentration_envelope(double s, double x, int n);

/// Distance envelope √B(α,φ)·(x/n)^{1/4} with
/// B = 4π(2π²+π+1)·max{π²/γ(α,φ), 2/α} and γ = ½(α(π−φ)² − φ²);
/// throws when γ ≤ 0 (criterion violated).
double rate_envelope(double alpha, double phi, double x, int n);

/// γ(α,φ) = ½(α(π−φ)² − φ²), the convexity floor of the centered functional.
double criterion_gamma(double alpha, double phi);

struct ConcentrationStats {
    int n = 0;
    std::vector<double> quantiles;  // at probabilities {0.1, 0.25, 0.5, 0.75, 0.9}
    double mean_distance = 0.0;
    int non_unique_trials = 0;
    // per confidence parameter x: observed fraction of trials with
    // ρ(d) > C(s)·√(x/n), for the arclength and the ambient support diameter
    std::map<double, double> violation_rate_arclength;
    std::map<double, double> violation_rate_ambient;
    std::vector<double> distances;  // one per trial, in trial order
};

struct ConcentrationReport {
    std::vector<int> n_values;
    int trials = 0;
    std::uint64_t seed = 0;
    std::vector<double> x_values;
    double support_diameter_arclength = 0.0;
    double support_diameter_ambient = 0.0;
    double mean_angle = 0.0;      // coordinate of the certified mean
    double certificate_margin = 0.0;
    std::vector<ConcentrationStats> per_n;
};

inline const std::vector<double> kQuantileProbs{0.1, 0.25, 0.5, 0.75, 0.9};

/// Sub-seed used for one (sample size, trial) cell of the simulation;
/// exposed so individual trials can be replayed.
std::uint64_t trial_seed(std::uint64_t seed, int n, int trial);

/// Monte-Carlo concentration study: samples n points per trial, computes the
/// exact empirical mean, and compares ρ(d(p*_n, p*)) against the theoretical
/// envelopes. Requires μ to have a certified unique mean; deterministic for
/// a given seed (per-trial sub-seeds derived from seed, n and trial index).
ConcentrationReport simulate(const CircularMeasure& mu, const std::vector<int>& n_values,
                             int trials, std::uint64_t seed,
                             const std::vector<double>& x_values = {1.0, 2.0, 4.0});

}  // namespace circmean
