#include "circmean/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace circmean {

namespace {

constexpr double kMergeTol = 1e-12;

std::vector<Atom> normalize_atoms(std::vector<Atom> atoms, double target_mass) {
    double total = 0.0;
    for (auto& a : atoms) {
        if (!(a.weight > 0.0))
            throw std::invalid_argument("atom weights must be strictly positive");
        a.coord = wrap(a.coord);
        total += a.weight;
    }
    if (total <= 0.0)
        throw std::invalid_argument("atomic part has no mass");
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.coord < b.coord; });
    // merge atoms that coincide after wrap (including the -π/π seam)
    std::vector<Atom> merged;
    for (const auto& a : atoms) {
        if (!merged.empty() && a.coord - merged.back().coord <= kMergeTol)
            merged.back().weight += a.weight;
        else
            merged.push_back(a);
    }
    if (merged.size() > 1 &&
        (kPi - merged.back().coord) + (merged.front().coord + kPi) <= kMergeTol) {
        merged.front().weight += merged.back().weight;
        merged.pop_back();
    }
    const double scale = target_mass / total;
    for (auto& a : merged) a.weight *= scale;
    return merged;
}

}  // namespace

CircularMeasure CircularMeasure::from_atoms(std::vector<Atom> atoms) {
    CircularMeasure mu;
    mu.atoms_ = normalize_atoms(std::move(atoms), 1.0);
    mu.atom_mass_ = 1.0;
    return mu;
}

CircularMeasure CircularMeasure::from_cells(std::vector<double> cells) {
    if (cells.empty())
        throw std::invalid_argument("density grid must be nonempty");
    const int grid = static_cast<int>(cells.size());
    const double h = kTwoPi / grid;
    double mass = 0.0;
    for (double v : cells) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw std::invalid_argument("density values must be nonnegative and finite");
        mass += v * h;
    }
    if (mass <= 0.0)
        throw std::invalid_argument("density has no mass");
    for (double& v : cells) v /= mass;
    CircularMeasure mu;
    mu.cells_ = std::move(cells);
    mu.grid_ = grid;
    mu.atom_mass_ = 0.0;
    return mu;
}

CircularMeasure CircularMeasure::uniform(int grid) {
    return from_cells(std::vector<double>(static_cast<std::size_t>(grid), 1.0 / kTwoPi));
}

CircularMeasure CircularMeasure::von_mises(double kappa, double mu, int grid) {
    if (!(kappa >= 0.0))
        throw std::invalid_argument("von Mises kappa must be nonnegative");
    const double center = wrap(mu);
    return from_density(
        [kappa, center](double t) { return std::exp(kappa * std::cos(t - center)); }, grid);
}

CircularMeasure CircularMeasure::mixed(std::vector<Atom> atoms, std::vector<double> cells,
                                       double atom_mass) {
    if (!(atom_mass >= 0.0 && atom_mass <= 1.0))
        throw std::invalid_argument("atom mass must lie in [0, 1]");
    CircularMeasure mu;
    if (atom_mass > 0.0)
        mu.atoms_ = normalize_atoms(std::move(atoms), atom_mass);
    if (atom_mass < 1.0) {
        CircularMeasure dens = from_cells(std::move(cells));
        mu.cells_ = dens.cells_;
        mu.grid_ = dens.grid_;
        for (double& v : mu.cells_) v *= (1.0 - atom_mass);
    }
    mu.atom_mass_ = atom_mass;
    return mu;
}

CircularMeasure CircularMeasure::mixture(const std::vector<CircularMeasure>& parts,
                                         const std::vector<double>& weights) {
    if (parts.empty() || parts.size() != weights.size())
        throw std::invalid_argument("mixture needs one weight per component");
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0)) throw std::invalid_argument("mixture weights must be positive");
        total += w;
    }
    int grid = 0;
    for (const auto& p : parts) {
        if (p.grid_ > 0) {
            if (grid > 0 && grid != p.grid_)
                throw std::invalid_argument("mixture components use different grids");
            grid = p.grid_;
        }
    }
    std::vector<Atom> atoms;
    std::vector<double> cells;
    if (grid > 0) cells.assign(static_cast<std::size_t>(grid), 0.0);
    double atom_mass = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const double w = weights[i] / total;
        for (const auto& a : parts[i].atoms_)
            atoms.push_back({a.coord, a.weight * w});
        for (std::size_t j = 0; j < parts[i].cells_.size(); ++j)
            cells[j] += parts[i].cells_[j] * w;
        atom_mass += parts[i].atom_mass_ * w;
    }
    if (atom_mass >= 1.0 - 1e-15 || cells.empty())
        return from_atoms(std::move(atoms));
    if (atoms.empty()) {
        CircularMeasure mu = from_cells(std::move(cells));
        return mu;
    }
    return mixed(std::move(atoms), std::move(cells), atom_mass);
}

LineMeasure CircularMeasure::pushforward(const CirclePoint& p0) const {
    const double theta0 = p0.angle();
    std::vector<Atom> atoms;
    atoms.reserve(atoms_.size());
    for (const auto& a : atoms_)
        atoms.push_back({wrap(a.coord - theta0), a.weight});
    std::sort(atoms.begin(), atoms.end(),
              [](const Atom& a, const Atom& b) { return a.coord < b.coord; });

    std::vector<DensityPiece> pieces;
    if (!cells_.empty()) {
        const double h = kTwoPi / grid_;
        pieces.reserve(cells_.size() + 1);
        for (int i = 0; i < grid_; ++i) {
            const double v = cells_[static_cast<std::size_t>(i)];
            if (v == 0.0) continue;
            const double lo = wrap(-kPi + i * h - theta0);
            const double hi = lo + h;
            if (hi <= kPi + 1e-15) {
                pieces.push_back({lo, std::min(hi, kPi), v});
            } else {  // piece straddles the -π seam: split it
                pieces.push_back({lo, kPi, v});
                pieces.push_back({-kPi, hi - kTwoPi, v});
            }
        }
        std::sort(pieces.begin(), pieces.end(),
                  [](const DensityPiece& a, const DensityPiece& b) { return a.lo < b.lo; });
    }
    return LineMeasure(p0, std::move(atoms), std::move(pieces));
}

std::vector<CirclePoint> CircularMeasure::sample(int n, std::uint64_t seed) const {
    if (n < 1) throw std::invalid_argument("sample: n must be at least 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    // cumulative weights of atoms and cells for inverse-CDF draws
    std::vector<double> atom_cum(atoms_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
        acc += atoms_[i].weight;
        atom_cum[i] = acc;
    }
    const double h = grid_ > 0 ? kTwoPi / grid_ : 0.0;
    std::vector<double> cell_cum(cells_.size());
    acc = 0.0;
    for (std::size_t i = 0; i < cells_.size(); ++i) {
        acc += cells_[i] * h;
        cell_cum[i] = acc;
    }

    std::vector<CirclePoint> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double comp = unif(rng);
        if (comp < atom_mass_ && !atoms_.empty()) {
            const double u = unif(rng) * atom_mass_;
            const auto it = std::lower_bound(atom_cum.begin(), atom_cum.end(), u);
            const std::size_t i =
                std::min(static_cast<std::size_t>(it - atom_cum.begin()), atoms_.size() - 1);
            out.push_back(CirclePoint::from_angle(atoms_[i].coord));
        } else {
            const double u = unif(rng) * density_mass();
            const auto it = std::lower_bound(cell_cum.begin(), cell_cum.end(), u);
            const std::size_t i =
                std::min(static_cast<std::size_t>(it - cell_cum.begin()), cells_.size() - 1);
            const double prev = i == 0 ? 0.0 : cell_cum[i - 1];
            const double frac =
                cells_[i] > 0.0 ? (u - prev) / (cells_[i] * h) : unif(rng);
            out.push_back(CirclePoint::from_angle(-kPi + (i + frac) * h));
        }
    }
    return out;
}

namespace {

// circular interval [lo, hi] with lo <= hi, hi - lo <= 2π
struct Arc {
    double lo, hi;
};

bool arcs_intersect(const Arc& a, const Arc& b) {
    for (double shift : {-kTwoPi, 0.0, kTwoPi}) {
        if (a.lo <= b.hi + shift && b.lo + shift <= a.hi) return true;
    }
    return false;
}

}  // namespace

double CircularMeasure::support_diameter() const {
    std::vector<Arc> comps;
    for (const auto& a : atoms_) comps.push_back({a.coord, a.coord});
    if (!cells_.empty()) {
        const double h = kTwoPi / grid_;
        int i = 0;
        while (i < grid_) {
            if (cells_[static_cast<std::size_t>(i)] == 0.0) {
                ++i;
                continue;
            }
            int j = i;
            while (j < grid_ && cells_[static_cast<std::size_t>(j)] > 0.0) ++j;
            comps.push_back({-kPi + i * h, -kPi + j * h});
            i = j;
        }
        // merge a run that wraps from the last cell around to the first
        if (comps.size() > 1 && cells_.front() > 0.0 && cells_.back() > 0.0) {
            // the first density run starts at -π and the last one ends at π
            for (std::size_t a = 0; a < comps.size(); ++a) {
                if (comps[a].lo == -kPi && comps[a].hi < kPi) {
                    for (std::size_t b = 0; b < comps.size(); ++b) {
                        if (b != a && comps[b].hi >= kPi - 1e-15) {
                            comps[b].hi = comps[a].hi + kTwoPi;
                            comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(a));
                            break;
                        }
                    }
                    break;
                }
            }
        }
    }
    if (comps.empty()) throw std::invalid_argument("support_diameter: empty measure");

    for (const auto& c : comps)
        if (c.hi - c.lo >= kPi) return kPi;
    // diameter is π exactly when the support meets its own antipode
    for (const auto& a : comps) {
        const Arc shifted{a.lo + kPi, a.hi + kPi};
        for (const auto& b : comps)
            if (arcs_intersect(shifted, b)) return kPi;
    }
    double best = 0.0;
    std::vector<double> endpoints;
    for (const auto& c : comps) {
        endpoints.push_back(c.lo);
        endpoints.push_back(c.hi);
    }
    for (std::size_t i = 0; i < endpoints.size(); ++i)
        for (std::size_t j = i + 1; j < endpoints.size(); ++j)
            best = std::max(best, coord_distance(endpoints[i], endpoints[j]));
    return std::min(best, kPi);
}

LineMeasure::LineMeasure(CirclePoint base, std::vector<Atom> atoms,
                         std::vector<DensityPiece> pieces)
    : base_(base), atoms_(std::move(atoms)), pieces_(std::move(pieces)) {}

double LineMeasure::cdf(double t) const {
    if (t < -kPi - 1e-12 || t > kPi + 1e-12)
        throw std::invalid_argument("cdf: argument outside [-π, π]");
    double m = 0.0;
    for (const auto& a : atoms_) {
        if (a.coord < t) m += a.weight;
        else break;
    }
    for (const auto& p : pieces_) {
        if (p.lo >= t) break;
        m += p.value * (std::min(p.hi, t) - p.lo);
    }
    return m;
}

double LineMeasure::cdf_incl(double t) const {
    return cdf(t) + atom_at(t);
}

double LineMeasure::atom_at(double t) const {
    for (const auto& a : atoms_)
        if (a.coord == t) return a.weight;
    return 0.0;
}

double LineMeasure::density_at(double t) const {
    for (const auto& p : pieces_)
        if (p.lo <= t && t < p.hi) return p.value;
    return 0.0;
}

double LineMeasure::mean() const {
    double m = 0.0;
    for (const auto& a : atoms_) m += a.weight * a.coord;
    for (const auto& p : pieces_) m += p.value * 0.5 * (p.hi * p.hi - p.lo * p.lo);
    return m;
}

double LineMeasure::second_moment() const {
    double m = 0.0;
    for (const auto& a : atoms_) m += a.weight * a.coord * a.coord;
    for (const auto& p : pieces_)
        m += p.value * (p.hi * p.hi * p.hi - p.lo * p.lo * p.lo) / 3.0;
    return m;
}

double LineMeasure::total_mass() const {
    double m = 0.0;
    for (const auto& a : atoms_) m += a.weight;
    for (const auto& p : pieces_) m += p.value * (p.hi - p.lo);
    return m;
}

}  // namespace circmean
