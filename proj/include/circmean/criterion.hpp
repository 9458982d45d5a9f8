#pragma once

#include <optional>

#include "circmean/geometry.hpp"
#include "circmean/measure.hpp"

namespace circmean {

/// Parameters of the density concentration criterion: the density in the
/// chart at p must stay below (1−α)/2π outside the window (−φ, φ).
struct CriterionParams {
    CirclePoint p;
    double alpha = 0.0;  // in (0, 1]
    double phi = 0.0;    // in (0, π)
};

/// Membership test (purely diffuse measures only; atoms are rejected).
bool satisfies_P(const CircularMeasure& density, const CriterionParams& params);

/// Half-window threshold φ_α = π·√α/(1+√α), increasing, range (0, π/2].
double phi_alpha(double alpha);

/// Concentration threshold: square of the unique root in (0, 1] of
/// (5−6δ+δ²)X³ + (1−δ²)X² − (2δ+1)X − 1, found by bisection to 1e-12.
double alpha_delta(double delta);

/// Recenter the criterion at p2 (requires φ < π/2, d(p, p2) < π − φ):
/// membership is preserved with the window widened by the distance moved.
CriterionParams translate(const CriterionParams& params, const CirclePoint& p2);

/// Weakening: membership with (α₁, φ₁) implies membership with any
/// α₂ ≤ α₁ and φ₂ ≥ φ₁.
CriterionParams weaken(const CriterionParams& params, double alpha2, double phi2);

/// Bound on |m(μ_p)| implied by membership: φ + (1−α)/(4π)·(π−φ)².
double mean_bound(const CriterionParams& params);

/// Searches a grid of centers and α values for criterion parameters with
/// α_δ ≤ α ≤ 1 and φ = δ·φ_α; absence of a witness is a valid result.
std::optional<CriterionParams> guarantee_existence(const CircularMeasure& density,
                                                   double delta, int center_grid = 720);

}  // namespace circmean
