#include "circmean/criterion.hpp"

#include <cmath>
#include <stdexcept>

namespace circmean {

namespace {

constexpr double kBoundSlack = 1e-15;

void check_params(const CriterionParams& params) {
    if (!(params.alpha > 0.0 && params.alpha <= 1.0))
        throw std::invalid_argument("criterion: alpha must lie in (0, 1]");
    if (!(params.phi > 0.0 && params.phi < kPi))
        throw std::invalid_argument("criterion: phi must lie in (0, π)");
}

}  // namespace

bool satisfies_P(const CircularMeasure& density, const CriterionParams& params) {
    check_params(params);
    if (density.atom_mass() > 0.0)
        throw std::invalid_argument("satisfies_P: measure must be purely diffuse");
    const double bound = (1.0 - params.alpha) / kTwoPi + kBoundSlack;
    const LineMeasure nu = density.pushforward(params.p);
    for (const auto& piece : nu.pieces()) {
        if (piece.value <= bound) continue;
        // does the piece meet {|θ| ≥ φ} with positive length?
        if (piece.hi > params.phi || piece.lo < -params.phi) return false;
    }
    return true;
}

double phi_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("phi_alpha: alpha must lie in (0, 1]");
    const double r = std::sqrt(alpha);
    return kPi * r / (1.0 + r);
}

double alpha_delta(double delta) {
    if (delta == 0.5) return 1.0;
    if (!(delta > 0.0 && delta < 0.5))
        throw std::invalid_argument("alpha_delta: delta must lie in (0, 1/2]");
    const auto cubic = [delta](double x) {
        return ((5.0 - 6.0 * delta + delta * delta) * x + (1.0 - delta * delta)) * x * x -
               (2.0 * delta + 1.0) * x - 1.0;
    };
    double lo = 0.0, hi = 1.0;  // cubic(0) = -1 < 0 <= cubic(1) for delta <= 1/2
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (cubic(mid) < 0.0 ? lo : hi) = mid;
    }
    const double root = 0.5 * (lo + hi);
    return root * root;
}

CriterionParams translate(const CriterionParams& params, const CirclePoint& p2) {
    check_params(params);
    if (!(params.phi < kPi / 2.0))
        throw std::invalid_argument("translate: requires phi < π/2");
    const double d = arclength_distance(params.p, p2);
    if (!(d < kPi - params.phi))
        throw std::invalid_argument("translate: requires d(p, p2) < π − φ");
    return {p2, params.alpha, params.phi + d};
}

CriterionParams weaken(const CriterionParams& params, double alpha2, double phi2) {
    check_params(params);
    if (alpha2 > params.alpha || phi2 < params.phi)
        throw std::invalid_argument("weaken: requires alpha2 <= alpha and phi2 >= phi");
    CriterionParams out{params.p, alpha2, phi2};
    check_params(out);
    return out;
}

double mean_bound(const CriterionParams& params) {
    check_params(params);
    const double r = kPi - params.phi;
    return params.phi + (1.0 - params.alpha) / (4.0 * kPi) * r * r;
}

std::optional<CriterionParams> guarantee_existence(const CircularMeasure& density,
                                                   double delta, int center_grid) {
    if (!(delta > 0.0 && delta <= 0.5))
        throw std::invalid_argument("guarantee_existence: delta must lie in (0, 1/2]");
    if (density.atom_mass() > 0.0)
        throw std::invalid_argument("guarantee_existence: measure must be purely diffuse");
    const double a_min = alpha_delta(delta);
    const auto& cells = density.cells();
    const int grid = density.grid();
    const double h = kTwoPi / grid;
    for (double alpha = a_min; alpha <= 1.0 + 1e-12; alpha += 0.01) {
        const double a = std::min(alpha, 1.0);
        const double phi = delta * phi_alpha(a);
        const double bound = (1.0 - a) / kTwoPi + kBoundSlack;

        // membership at center p requires every cell above the bound to sit
        // inside the closed arc [θ_p − φ, θ_p + φ]; find the minimal arc
        // covering the offending cells via the largest circular gap
        std::vector<int> offending;
        for (int i = 0; i < grid; ++i)
            if (cells[static_cast<std::size_t>(i)] > bound) offending.push_back(i);
        if (static_cast<double>(offending.size()) * h > 2.0 * phi + h) continue;

        double arc_lo = 0.0, arc_hi = 0.0;
        if (!offending.empty()) {
            double best_gap = -1.0;
            for (std::size_t k = 0; k < offending.size(); ++k) {
                const int cur = offending[k];
                const int nxt = offending[(k + 1) % offending.size()];
                const double gap =
                    (k + 1 == offending.size() ? nxt + grid - cur : nxt - cur) * h - h;
                if (gap > best_gap) {
                    best_gap = gap;
                    arc_lo = -kPi + nxt * h;           // start of the covering arc
                    arc_hi = arc_lo + (kTwoPi - gap);  // end of it (may exceed π)
                }
            }
            if (arc_hi - arc_lo > 2.0 * phi) continue;
        }
        for (int i = 0; i < center_grid; ++i) {
            const double theta0 = -kPi + i * kTwoPi / center_grid;
            if (!offending.empty()) {
                // does [arc_lo, arc_hi] fit inside [θ0 − φ, θ0 + φ] (mod 2π)?
                bool ok = false;
                for (double shift : {-kTwoPi, 0.0, kTwoPi})
                    if (arc_lo + shift >= theta0 - phi && arc_hi + shift <= theta0 + phi)
                        ok = true;
                if (!ok) continue;
            }
            const CriterionParams params{CirclePoint::from_angle(theta0), a, phi};
            if (satisfies_P(density, params)) return params;
        }
    }
    return std::nullopt;
}

}  // namespace circmean
