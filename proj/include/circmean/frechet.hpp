#pragma once

#include <vector>

#include "circmean/geometry.hpp"
#include "circmean/measure.hpp"

namespace circmean {

/// One evaluation of the Fréchet functional in a chart: value, both
/// one-sided derivatives, and the cusp jump (right minus left, which is
/// -2π times the mass at the cut locus, hence never positive).
struct FrechetEvaluation {
    double theta = 0.0;
    double value = 0.0;
    double left_derivative = 0.0;
    double right_derivative = 0.0;
    double jump = 0.0;
};

/// Closed-form evaluator for F, dF and the CDF of a pushforward measure,
/// with O(log) queries via prefix sums over atoms and density pieces.
class ChartEvaluator {
public:
    explicit ChartEvaluator(const LineMeasure& nu);

    /// ν([-π, c)), half-open.
    double cdf(double c) const;
    /// ν([-π, c]).
    double cdf_incl(double c) const;
    /// ∫_{[-π,c)} t dν(t).
    double partial_first_moment(double c) const;
    /// Mass of the atom exactly at c (0 if none).
    double atom_at(double c) const;
    double density_at(double c) const;

    double mean() const { return mean_; }
    double second_moment() const { return m2_; }

    /// F_ν(θ) = ½ ∫ d²(t, θ) dν(t), exact piecewise polynomial.
    double value(double theta) const;
    /// Left-continuous derivative of F_ν.
    double left_derivative(double theta) const;
    double right_derivative(double theta) const;
    FrechetEvaluation eval(double theta) const;

private:
    std::vector<Atom> atoms_;
    std::vector<double> atom_w_prefix_;   // Σ w up to and including atom i
    std::vector<double> atom_wt_prefix_;  // Σ w·τ up to and including atom i
    std::vector<DensityPiece> pieces_;
    std::vector<double> piece_m0_prefix_;  // ∫ v over pieces 0..i
    std::vector<double> piece_m1_prefix_;  // ∫ v·t over pieces 0..i
    double mean_ = 0.0;
    double m2_ = 0.0;
};

/// F_μ(p) = ½ ∫ d²(x, p) dμ(x).
double functional(const CircularMeasure& mu, const CirclePoint& p);

/// One-sided derivatives of F in the chart at p0, evaluated at θ.
FrechetEvaluation derivative(const CircularMeasure& mu, const CirclePoint& p0, double theta);

/// Centered functional G(θ) = F_μ(exp(p*, θ)) − F_μ(p*). Requires p* to be
/// a critical point (|m(μ_{p*})| below tol); throws otherwise.
double g_centered(const CircularMeasure& mu, const CirclePoint& p_star, double theta,
                  double critical_tol = 1e-8);

}  // namespace circmean
