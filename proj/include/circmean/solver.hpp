#pragma once

#include <optional>
#include <vector>

#include "circmean/frechet.hpp"
#include "circmean/geometry.hpp"
#include "circmean/measure.hpp"

namespace circmean {

/// A zero of the (left-continuous) derivative of the Fréchet functional,
/// reported in the working chart. Candidates landing exactly on a validity
/// window edge have mass at their cut locus and are kept with
/// is_local_min = false (Corollary-1 boundary points).
struct CriticalPoint {
    double coord = 0.0;
    CirclePoint point;
    double value = 0.0;
    bool is_local_min = false;
    int branch_index = 0;
    double left_derivative = 0.0;
    double right_derivative = 0.0;
};

struct MeanResult {
    std::vector<CriticalPoint> argmins;  // all global minimizers within tie_tol
    bool unique = false;
    double min_value = 0.0;
    double runner_up_gap = 0.0;  // +inf when there is no second local minimum
    std::vector<CriticalPoint> critical_points;  // every critical point found
};

/// All critical points of F for a purely atomic measure, exact affine solve
/// per inter-atom window. The chart base defaults to the first atom.
std::vector<CriticalPoint> critical_points(const CircularMeasure& mu,
                                           std::optional<CirclePoint> base = std::nullopt);

/// Exact Fréchet mean of a purely atomic measure: evaluates F at every
/// local minimum and returns all values within tie_tol of the best.
MeanResult frechet_mean(const CircularMeasure& mu, double tie_tol = 1e-9,
                        std::optional<CirclePoint> base = std::nullopt);

/// Equal-weight convenience wrapper over a point sample.
MeanResult frechet_mean_of_samples(const std::vector<CirclePoint>& samples,
                                   double tie_tol = 1e-9);

/// Brute-force verifier for any measure: grid scan of F plus golden-section
/// refinement of every descent basin.
MeanResult grid_oracle(const CircularMeasure& mu, int resolution = 1 << 16,
                       double tie_tol = 1e-9);

}  // namespace circmean
