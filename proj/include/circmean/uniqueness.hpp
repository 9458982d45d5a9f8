#pragma once

#include <optional>
#include <utility>

#include "circmean/measure.hpp"
#include "circmean/solver.hpp"

namespace circmean {

/// Outcome of the necessary-and-sufficient uniqueness check at a critical
/// point: margin is the minimum over θ ≠ 0 of the comparison integral
/// between the uniform measure and μ in the chart at the critical point
/// (equal to min G/2π); strictly positive exactly when the mean is unique.
struct UniquenessCertificate {
    CirclePoint critical_point;
    bool holds = false;
    double margin = 0.0;
    std::optional<double> violating_theta;  // argmin of the integral when margin <= 0
    bool at_boundary = false;               // |margin| within 1e-12 of 0
};

/// Certifies or refutes uniqueness of the Fréchet mean at a critical point
/// p_star (|m(μ_{p*})| must be below critical_tol; throws otherwise). The
/// comparison integral is minimized exactly over all polynomial pieces.
UniquenessCertificate certify(const CircularMeasure& mu, const CirclePoint& p_star,
                              double critical_tol = 1e-8);

/// Thrown when the certificate verdict contradicts the argmin multiplicity
/// reported by the solver/oracle (a numerical-tolerance conflict).
struct VerdictMismatch : std::runtime_error {
    VerdictMismatch(const std::string& what, double margin_, bool unique_)
        : std::runtime_error(what), margin(margin_), solver_unique(unique_) {}
    double margin;
    bool solver_unique;
};

/// Finds the mean (exact solver for atomic measures, grid oracle otherwise)
/// and certifies it; throws VerdictMismatch if the two verdicts disagree.
std::pair<MeanResult, UniquenessCertificate> find_mean_and_certify(
    const CircularMeasure& mu, double tie_tol = 1e-9, int oracle_resolution = 1 << 16);

}  // namespace circmean
