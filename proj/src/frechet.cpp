#include "circmean/frechet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace circmean {

ChartEvaluator::ChartEvaluator(const LineMeasure& nu)
    : atoms_(nu.atoms()), pieces_(nu.pieces()) {
    atom_w_prefix_.resize(atoms_.size());
    atom_wt_prefix_.resize(atoms_.size());
    double w = 0.0, wt = 0.0, wtt = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        w += atoms_[i].weight;
        wt += atoms_[i].weight * atoms_[i].coord;
        wtt += atoms_[i].weight * atoms_[i].coord * atoms_[i].coord;
        atom_w_prefix_[i] = w;
        atom_wt_prefix_[i] = wt;
    }
    piece_m0_prefix_.resize(pieces_.size());
    piece_m1_prefix_.resize(pieces_.size());
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < pieces_.size(); ++i) {
        const auto& p = pieces_[i];
        m0 += p.value * (p.hi - p.lo);
        m1 += p.value * 0.5 * (p.hi * p.hi - p.lo * p.lo);
        m2 += p.value * (p.hi * p.hi * p.hi - p.lo * p.lo * p.lo) / 3.0;
        piece_m0_prefix_[i] = m0;
        piece_m1_prefix_[i] = m1;
    }
    mean_ = wt + m1;
    m2_ = wtt + m2;
}

double ChartEvaluator::cdf(double c) const {
    double m = 0.0;
    // atoms with coord strictly below c
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), c,
                               [](const Atom& a, double v) { return a.coord < v; });
    if (it != atoms_.begin()) m += atom_w_prefix_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
    // pieces up to c, piece containing c handled partially
    auto pit = std::upper_bound(pieces_.begin(), pieces_.end(), c,
                                [](double v, const DensityPiece& p) { return v < p.lo; });
    if (pit != pieces_.begin()) {
        const std::size_t i = static_cast<std::size_t>(pit - pieces_.begin()) - 1;
        m += (i == 0 ? 0.0 : piece_m0_prefix_[i - 1]);
        const auto& p = pieces_[i];
        m += p.value * (std::min(p.hi, c) - p.lo);
    }
    return m;
}

double ChartEvaluator::cdf_incl(double c) const { return cdf(c) + atom_at(c); }

double ChartEvaluator::partial_first_moment(double c) const {
    double m = 0.0;
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), c,
                               [](const Atom& a, double v) { return a.coord < v; });
    if (it != atoms_.begin()) m += atom_wt_prefix_[static_cast<std::size_t>(it - atoms_.begin()) - 1];
    auto pit = std::upper_bound(pieces_.begin(), pieces_.end(), c,
                                [](double v, const DensityPiece& p) { return v < p.lo; });
    if (pit != pieces_.begin()) {
        const std::size_t i = static_cast<std::size_t>(pit - pieces_.begin()) - 1;
        m += (i == 0 ? 0.0 : piece_m1_prefix_[i - 1]);
        const auto& p = pieces_[i];
        const double hi = std::min(p.hi, c);
        m += p.value * 0.5 * (hi * hi - p.lo * p.lo);
    }
    return m;
}

double ChartEvaluator::atom_at(double c) const {
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), c,
                               [](const Atom& a, double v) { return a.coord < v; });
    return (it != atoms_.end() && it->coord == c) ? it->weight : 0.0;
}

double ChartEvaluator::density_at(double c) const {
    auto pit = std::upper_bound(pieces_.begin(), pieces_.end(), c,
                                [](double v, const DensityPiece& p) { return v < p.lo; });
    if (pit == pieces_.begin()) return 0.0;
    const auto& p = *(pit - 1);
    return (c < p.hi) ? p.value : 0.0;
}

namespace {

// Cut-locus coordinates computed as θ∓π can land a few ulp away from the
// atom they are meant to hit; snap them so the half-open CDF splits exactly
// at the atom.
double snap_to_atoms(const std::vector<Atom>& atoms, double c) {
    constexpr double kSnapTol = 1e-12;
    auto it = std::lower_bound(atoms.begin(), atoms.end(), c,
                               [](const Atom& a, double v) { return a.coord < v; });
    if (it != atoms.end() && it->coord - c <= kSnapTol) return it->coord;
    if (it != atoms.begin() && c - (it - 1)->coord <= kSnapTol) return (it - 1)->coord;
    return c;
}

}  // namespace

double ChartEvaluator::value(double theta) const {
    // F(θ) = ½(m₂ − 2θm + θ²) + 2π·g±(θ), with g± the cut-locus correction
    const double quad = 0.5 * (m2_ - 2.0 * theta * mean_ + theta * theta);
    double g = 0.0;
    if (theta >= 0.0) {
        const double c = snap_to_atoms(atoms_, theta - kPi);  // cut-locus coordinate, in [-π, 0)
        g = (kPi - theta) * cdf(c) + partial_first_moment(c);
    } else {
        const double c = snap_to_atoms(atoms_, theta + kPi);  // in (0, π)
        g = (kPi + theta) * (1.0 - cdf(c)) - (mean_ - partial_first_moment(c));
    }
    return quad + kTwoPi * g;
}

double ChartEvaluator::left_derivative(double theta) const {
    if (theta >= 0.0)
        return theta - kTwoPi * cdf(snap_to_atoms(atoms_, theta - kPi)) - mean_;
    return theta + kTwoPi * (1.0 - cdf(snap_to_atoms(atoms_, theta + kPi))) - mean_;
}

double ChartEvaluator::right_derivative(double theta) const {
    if (theta >= 0.0)
        return theta - kTwoPi * cdf_incl(snap_to_atoms(atoms_, theta - kPi)) - mean_;
    return theta + kTwoPi * (1.0 - cdf_incl(snap_to_atoms(atoms_, theta + kPi))) - mean_;
}

FrechetEvaluation ChartEvaluator::eval(double theta) const {
    FrechetEvaluation e;
    e.theta = theta;
    e.value = value(theta);
    e.left_derivative = left_derivative(theta);
    e.right_derivative = right_derivative(theta);
    e.jump = e.right_derivative - e.left_derivative;
    return e;
}

double functional(const CircularMeasure& mu, const CirclePoint& p) {
    return 0.5 * mu.pushforward(p).second_moment();
}

FrechetEvaluation derivative(const CircularMeasure& mu, const CirclePoint& p0, double theta) {
    ChartEvaluator ev(mu.pushforward(p0));
    return ev.eval(wrap(theta));
}

double g_centered(const CircularMeasure& mu, const CirclePoint& p_star, double theta,
                  double critical_tol) {
    ChartEvaluator ev(mu.pushforward(p_star));
    const double m = ev.mean();
    if (std::abs(m) > critical_tol)
        throw std::invalid_argument("g_centered: base point is not critical, m(μ_{p*}) = " +
                                    std::to_string(m));
    return ev.value(wrap(theta)) - ev.value(0.0);
}

}  // namespace circmean
