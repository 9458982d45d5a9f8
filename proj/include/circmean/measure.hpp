#pragma once

#include <cstdint>
#include <vector>

#include "circmean/geometry.hpp"

namespace circmean {

/// A point mass at a chart coordinate (or a world angle).
struct Atom {
    double coord = 0.0;
    double weight = 0.0;
};

/// A constant piece of a density, covering [lo, hi) ⊂ [-π, π).
struct DensityPiece {
    double lo = 0.0;
    double hi = 0.0;
    double value = 0.0;  // density w.r.t. Lebesgue measure on the chart
};

class LineMeasure;

/// A probability measure on the circle: a weighted-atom list plus a
/// piecewise-constant density on a uniform grid over [-π, π), with the
/// atomic and diffuse parts together carrying total mass 1.
class CircularMeasure {
public:
    static constexpr int kDefaultGrid = 4096;

    /// Purely atomic measure; positions are world angles, weights are
    /// normalized to sum to 1. Atoms closer than 1e-12 after wrap are merged.
    static CircularMeasure from_atoms(std::vector<Atom> atoms);

    /// Purely diffuse measure from M cell values on [-π, π); values are
    /// rescaled so the density integrates to 1.
    static CircularMeasure from_cells(std::vector<double> cells);

    static CircularMeasure uniform(int grid = kDefaultGrid);
    static CircularMeasure von_mises(double kappa, double mu, int grid = kDefaultGrid);

    /// Discretize a density function of the world angle onto the grid
    /// (midpoint rule, renormalized).
    template <class F>
    static CircularMeasure from_density(F&& f, int grid = kDefaultGrid) {
        std::vector<double> cells(static_cast<std::size_t>(grid));
        const double h = kTwoPi / grid;
        for (int i = 0; i < grid; ++i)
            cells[static_cast<std::size_t>(i)] = f(-kPi + (i + 0.5) * h);
        return from_cells(std::move(cells));
    }

    /// Convex combination of measures; weights are normalized.
    static CircularMeasure mixture(const std::vector<CircularMeasure>& parts,
                                   const std::vector<double>& weights);

    /// General constructor: atomic mass `atoms` plus diffuse mass carried by
    /// `cells`; total masses must sum to 1.
    static CircularMeasure mixed(std::vector<Atom> atoms, std::vector<double> cells,
                                 double atom_mass);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<double>& cells() const { return cells_; }
    int grid() const { return grid_; }
    double atom_mass() const { return atom_mass_; }
    double density_mass() const { return 1.0 - atom_mass_; }
    bool is_atomic() const { return cells_.empty() || atom_mass_ >= 1.0 - 1e-15; }
    bool is_density() const { return atoms_.empty(); }

    /// Image measure through the chart at p0 (Atom coords become chart
    /// coordinates; cells rotate, the piece straddling -π is split).
    LineMeasure pushforward(const CirclePoint& p0) const;

    /// n i.i.d. draws, deterministic for a given seed.
    std::vector<CirclePoint> sample(int n, std::uint64_t seed) const;

    /// Arclength diameter of the support, capped at π.
    double support_diameter() const;

private:
    CircularMeasure() = default;

    std::vector<Atom> atoms_;    // world angles in [-π, π), sorted, weights absolute
    std::vector<double> cells_;  // absolute density values, grid_ uniform cells
    int grid_ = 0;
    double atom_mass_ = 0.0;
};

/// Pushforward of a CircularMeasure into the chart at a base point:
/// atoms at chart coordinates plus sorted constant density pieces.
class LineMeasure {
public:
    LineMeasure(CirclePoint base, std::vector<Atom> atoms, std::vector<DensityPiece> pieces);

    const CirclePoint& base() const { return base_; }
    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<DensityPiece>& pieces() const { return pieces_; }

    /// ν([-π, t)), strictly half-open: an atom exactly at t is excluded.
    double cdf(double t) const;
    /// ν([-π, t]).
    double cdf_incl(double t) const;
    /// Mass of the atom exactly at t (0 if none).
    double atom_at(double t) const;
    /// Density value at t (0 outside every piece).
    double density_at(double t) const;

    double mean() const;
    double second_moment() const;
    double total_mass() const;

private:
    CirclePoint base_;
    std::vector<Atom> atoms_;          // sorted by coord
    std::vector<DensityPiece> pieces_; // sorted by lo, disjoint
};

}  // namespace circmean
