#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace circmean {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Canonical representative of t mod 2π in [-π, π).
inline double wrap(double t) {
    if (!std::isfinite(t))
        throw std::invalid_argument("wrap: non-finite angle");
    double r = std::remainder(t, kTwoPi);  // r in [-π, π], exact reduction
    if (r >= kPi) r -= kTwoPi;
    return r;
}

/// An angle stored in the half-open interval [-π, π).
class Angle {
public:
    Angle() = default;
    explicit Angle(double t) : value_(wrap(t)) {}
    double value() const { return value_; }

private:
    double value_ = 0.0;
};

/// A point on the unit circle, unit-norm Euclidean coordinates.
struct CirclePoint {
    double x = 1.0;
    double y = 0.0;

    static CirclePoint from_angle(double t) { return {std::cos(t), std::sin(t)}; }

    /// World angle in [-π, π).
    double angle() const { return wrap(std::atan2(y, x)); }

    bool is_unit(double tol = 1e-12) const {
        return std::abs(x * x + y * y - 1.0) <= tol;
    }
};

/// Arclength metric, d = 2·arcsin(‖p1−p2‖/2), values in [0, π].
inline double arclength_distance(const CirclePoint& p1, const CirclePoint& p2) {
    const double dx = p1.x - p2.x;
    const double dy = p1.y - p2.y;
    double half = 0.5 * std::sqrt(dx * dx + dy * dy);
    if (half > 1.0) half = 1.0;  // rounding can push the chord past the diameter
    return 2.0 * std::asin(half);
}

/// Distance on ℝ/2πℤ between two chart coordinates, min over 2πk shifts.
inline double coord_distance(double t1, double t2) {
    return std::abs(wrap(t1 - t2));
}

/// Exponential map: rotate p0 by θ.
inline CirclePoint exp_map(const CirclePoint& p0, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {c * p0.x - s * p0.y, s * p0.x + c * p0.y};
}

/// Inverse of exp_map onto [-π, π).
inline double log_map(const CirclePoint& p0, const CirclePoint& p) {
    const double cross = p0.x * p.y - p0.y * p.x;
    const double dot = p0.x * p.x + p0.y * p.y;
    return wrap(std::atan2(cross, dot));
}

/// Chart coordinate of the cut locus of the point at coordinate t.
inline double cut_locus_coord(double t) {
    return wrap(t + kPi);
}

}  // namespace circmean
