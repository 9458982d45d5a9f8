#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "circmean/geometry.hpp"
#include "circmean/measure.hpp"

namespace circmean::testing {

/// Weights 1/6, 2/3, 1/6 at angles 2π/3, 0, −2π/3; unique mean at 0 with
/// F = 2π²/27.
inline CircularMeasure three_atom_benchmark() {
    return CircularMeasure::from_atoms({{2.0 * kPi / 3.0, 1.0 / 6.0},
                                        {0.0, 2.0 / 3.0},
                                        {-2.0 * kPi / 3.0, 1.0 / 6.0}});
}

/// Boundary-hemisphere family: ε·δ(θ̂−π/2) + (1−ε)·δ(θ̂+π/2) with
/// ε = θ̂/π + ½. The point 0 is critical and ties with wrap(2θ̂−π).
inline CircularMeasure degenerate_pair(double theta_hat) {
    const double eps = theta_hat / kPi + 0.5;
    return CircularMeasure::from_atoms(
        {{theta_hat - kPi / 2.0, eps}, {theta_hat + kPi / 2.0, 1.0 - eps}});
}

inline CircularMeasure random_atomic(std::mt19937_64& rng, int n, bool equal_weights) {
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_real_distribution<double> weight(0.05, 1.0);
    std::vector<Atom> atoms;
    atoms.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        atoms.push_back({angle(rng), equal_weights ? 1.0 : weight(rng)});
    return CircularMeasure::from_atoms(std::move(atoms));
}

/// Random smooth density: mixture of 1–3 von Mises components with moderate
/// concentration (keeps the density's Lipschitz constant small enough for
/// finite-difference checks).
inline CircularMeasure random_density(std::mt19937_64& rng, int grid = 4096) {
    std::uniform_int_distribution<int> count(1, 3);
    std::uniform_real_distribution<double> kappa(0.5, 12.0);
    std::uniform_real_distribution<double> mu(-kPi, kPi);
    std::uniform_real_distribution<double> w(0.2, 1.0);
    const int k = count(rng);
    std::vector<CircularMeasure> parts;
    std::vector<double> weights;
    for (int i = 0; i < k; ++i) {
        parts.push_back(CircularMeasure::von_mises(kappa(rng), mu(rng), grid));
        weights.push_back(w(rng));
    }
    return CircularMeasure::mixture(parts, weights);
}

/// Random density satisfying the concentration criterion at center angle 0:
/// every cell meeting {|θ| ≥ φ} stays below (1−α)/(2π), with the leftover
/// mass placed inside the window. With `symmetric`, the density is even, so
/// 0 is a critical point of the Fréchet functional.
inline CircularMeasure random_p_density(std::mt19937_64& rng, double alpha, double phi,
                                        bool symmetric, int grid = 4096) {
    std::uniform_real_distribution<double> frac(0.0, 0.9);
    std::uniform_real_distribution<double> bump(0.1, 1.0);
    const double h = kTwoPi / grid;
    const double bound = (1.0 - alpha) / kTwoPi;
    std::vector<double> cells(static_cast<std::size_t>(grid), 0.0);
    double outside_mass = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double lo = -kPi + i * h, hi = lo + h;
        const bool outside = hi > phi || lo < -phi;
        if (outside) {
            cells[static_cast<std::size_t>(i)] = frac(rng) * bound;
            outside_mass += cells[static_cast<std::size_t>(i)] * h;
        }
    }
    double inside_sum = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double lo = -kPi + i * h, hi = lo + h;
        if (!(hi > phi || lo < -phi)) {
            cells[static_cast<std::size_t>(i)] = bump(rng);
            inside_sum += cells[static_cast<std::size_t>(i)] * h;
        }
    }
    const double scale = (1.0 - outside_mass) / inside_sum;
    for (int i = 0; i < grid; ++i) {
        const double lo = -kPi + i * h, hi = lo + h;
        if (!(hi > phi || lo < -phi)) cells[static_cast<std::size_t>(i)] *= scale;
    }
    if (symmetric) {
        for (int i = 0; i < grid / 2; ++i) {
            const std::size_t a = static_cast<std::size_t>(i);
            const std::size_t b = static_cast<std::size_t>(grid - 1 - i);
            const double v = 0.5 * (cells[a] + cells[b]);
            cells[a] = cells[b] = v;
        }
    }
    return CircularMeasure::from_cells(std::move(cells));
}

}  // namespace circmean::testing
