#include "circmean/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace circmean {

namespace {

constexpr double kEdgeTol = 1e-12;
constexpr double kDerivTol = 1e-9;

struct Candidate {
    double coord;
    bool boundary;  // landed on a window edge whose cut locus is an atom
    int branch;
};

// Scans one derivative branch. `edges` are the window boundaries (cut-locus
// coordinates shifted into the branch domain); edge i is "real" when it is
// the cut locus of an actual atom rather than a domain sentinel.
void scan_windows(const std::vector<double>& candidates, const std::vector<double>& edges,
                  const std::vector<bool>& real_edge, double domain_lo, double domain_hi,
                  int branch_offset, std::vector<Candidate>& out) {
    for (std::size_t i = 0; i + 1 <= candidates.size(); ++i) {
        double theta = candidates[i];
        const double lo = edges[i];
        const double hi = edges[i + 1];
        if (theta < lo - kEdgeTol || theta > hi + kEdgeTol) continue;
        const bool near_lo = std::abs(theta - lo) <= kEdgeTol;
        const bool near_hi = std::abs(theta - hi) <= kEdgeTol;
        if (near_lo && real_edge[i]) {
            out.push_back({lo, true, branch_offset + static_cast<int>(i)});
            continue;
        }
        if (near_hi && real_edge[i + 1]) {
            out.push_back({hi, true, branch_offset + static_cast<int>(i)});
            continue;
        }
        // clamp a candidate that slid past a sentinel edge by rounding
        theta = std::clamp(theta, lo, hi);
        if (theta < domain_lo || theta >= domain_hi) continue;
        out.push_back({theta, false, branch_offset + static_cast<int>(i)});
    }
}

}  // namespace

std::vector<CriticalPoint> critical_points(const CircularMeasure& mu,
                                           std::optional<CirclePoint> base_opt) {
    if (!mu.is_atomic())
        throw std::invalid_argument("critical_points: measure must be purely atomic");
    if (mu.atoms().empty())
        throw std::invalid_argument("critical_points: at least one atom required");

    const CirclePoint base =
        base_opt.value_or(CirclePoint::from_angle(mu.atoms().front().coord));
    const LineMeasure nu = mu.pushforward(base);
    const ChartEvaluator ev(nu);
    const double m = ev.mean();

    // split the sorted coordinates into negative (ascending) and
    // nonnegative (descending) lists, as in the two branch scans
    std::vector<Atom> neg, pos;
    for (const auto& a : nu.atoms())
        (a.coord < 0.0 ? neg : pos).push_back(a);
    std::reverse(pos.begin(), pos.end());

    std::vector<Candidate> found;

    // branch θ ∈ [0, π): candidate in window i solves θ = 2π·W_i + m where
    // W_i is the mass strictly below the window's cut locus
    {
        std::vector<double> cands, edges;
        std::vector<bool> real_edge;
        edges.push_back(0.0);  // cut locus -π (sentinel)
        real_edge.push_back(false);
        double w = 0.0;
        cands.push_back(kTwoPi * w + m);
        for (const auto& a : neg) {
            edges.push_back(a.coord + kPi);
            real_edge.push_back(true);
            w += a.weight;
            cands.push_back(kTwoPi * w + m);
        }
        edges.push_back(kPi);  // cut locus 0⁻ (sentinel)
        real_edge.push_back(false);
        scan_windows(cands, edges, real_edge, 0.0, kPi, 0, found);
    }

    // branch θ ∈ [-π, 0): θ = -2π·W_i + m with W_i the mass strictly above
    // the window's cut locus
    {
        std::vector<double> cands, edges;
        std::vector<bool> real_edge;
        // windows enumerated from θ = -π upward; cut loci descend from π
        std::vector<double> lo_edges;
        double w = 0.0;
        std::vector<double> cand_desc;  // candidate for window with hi edge τ⁺_i - π
        cand_desc.push_back(-kTwoPi * w + m);  // i = 0, hi sentinel 0
        for (const auto& a : pos) {
            w += a.weight;
            cand_desc.push_back(-kTwoPi * w + m);
        }
        // assemble ascending: window j covers [τ⁺_{i+1}-π, τ⁺_i-π]
        edges.push_back(-kPi);
        real_edge.push_back(false);
        for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
            edges.push_back(it->coord - kPi);
            real_edge.push_back(true);
        }
        edges.push_back(0.0);
        real_edge.push_back(false);
        for (std::size_t j = 0; j + 1 < edges.size(); ++j)
            cands.push_back(cand_desc[edges.size() - 2 - j]);
        scan_windows(cands, edges, real_edge, -kPi, 0.0, 1000, found);
    }

    std::sort(found.begin(), found.end(),
              [](const Candidate& a, const Candidate& b) { return a.coord < b.coord; });

    std::vector<CriticalPoint> out;
    for (const auto& c : found) {
        if (!out.empty() && std::abs(c.coord - out.back().coord) <= kEdgeTol) continue;
        const double left = ev.left_derivative(c.coord);
        const double right = ev.right_derivative(c.coord);
        if (std::abs(left) > kDerivTol) continue;  // extended derivative must vanish
        CriticalPoint cp;
        cp.coord = c.coord;
        cp.point = exp_map(base, c.coord);
        cp.value = ev.value(c.coord);
        cp.left_derivative = left;
        cp.right_derivative = right;
        cp.branch_index = c.branch;
        cp.is_local_min = !c.boundary && left <= kDerivTol && right >= -kDerivTol;
        out.push_back(cp);
    }
    return out;
}

MeanResult frechet_mean(const CircularMeasure& mu, double tie_tol,
                        std::optional<CirclePoint> base) {
    if (tie_tol < 0.0) throw std::invalid_argument("frechet_mean: tie_tol must be >= 0");
    MeanResult res;
    res.critical_points = critical_points(mu, base);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& cp : res.critical_points)
        if (cp.is_local_min) best = std::min(best, cp.value);
    if (!std::isfinite(best))
        throw std::runtime_error("frechet_mean: no local minimum found");
    double runner_up = std::numeric_limits<double>::infinity();
    for (const auto& cp : res.critical_points) {
        if (!cp.is_local_min) continue;
        if (cp.value <= best + tie_tol)
            res.argmins.push_back(cp);
        else
            runner_up = std::min(runner_up, cp.value);
    }
    res.min_value = best;
    res.unique = res.argmins.size() == 1;
    res.runner_up_gap = runner_up - best;
    return res;
}

MeanResult frechet_mean_of_samples(const std::vector<CirclePoint>& samples, double tie_tol) {
    if (samples.empty())
        throw std::invalid_argument("frechet_mean_of_samples: empty sample");
    std::vector<Atom> atoms;
    atoms.reserve(samples.size());
    for (const auto& p : samples) atoms.push_back({p.angle(), 1.0});
    return frechet_mean(CircularMeasure::from_atoms(std::move(atoms)), tie_tol);
}

namespace {

double golden_refine(const ChartEvaluator& ev, double a, double b, double tol) {
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = ev.value(x1), f2 = ev.value(x2);
    int guard = 0;
    while (b - a > tol && ++guard < 200) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = ev.value(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = ev.value(x2);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

MeanResult grid_oracle(const CircularMeasure& mu, int resolution, double tie_tol) {
    if (resolution < 8) throw std::invalid_argument("grid_oracle: resolution must be >= 8");
    const CirclePoint base{1.0, 0.0};
    const ChartEvaluator ev(mu.pushforward(base));

    const double h = kTwoPi / resolution;
    std::vector<double> fval(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i)
        fval[static_cast<std::size_t>(i)] = ev.value(-kPi + i * h);

    std::vector<int> basins;
    for (int i = 0; i < resolution; ++i) {
        const double prev = fval[static_cast<std::size_t>((i + resolution - 1) % resolution)];
        const double next = fval[static_cast<std::size_t>((i + 1) % resolution)];
        const double cur = fval[static_cast<std::size_t>(i)];
        if (cur <= prev && cur <= next) basins.push_back(i);
    }

    struct Local {
        double coord;
        double value;
    };
    std::vector<Local> locals;
    const bool flat = basins.size() > static_cast<std::size_t>(resolution) / 4;
    for (int i : basins) {
        if (flat) {  // giant tie plateau (uniform-like): no refinement needed
            locals.push_back({-kPi + i * h, fval[static_cast<std::size_t>(i)]});
            continue;
        }
        const double lo = -kPi + (i - 1) * h;
        const double hi = -kPi + (i + 1) * h;
        const double t = golden_refine(ev, lo, hi, 1e-12);
        locals.push_back({t, ev.value(t)});
    }

    double best = std::numeric_limits<double>::infinity();
    for (const auto& l : locals) best = std::min(best, l.value);

    MeanResult res;
    res.min_value = best;
    double runner_up = std::numeric_limits<double>::infinity();
    std::vector<Local> ties;
    for (const auto& l : locals) {
        if (l.value <= best + tie_tol)
            ties.push_back(l);
        else
            runner_up = std::min(runner_up, l.value);
    }
    std::sort(ties.begin(), ties.end(),
              [](const Local& a, const Local& b) { return a.coord < b.coord; });
    for (const auto& t : ties) {
        const double c = wrap(t.coord);
        if (!res.argmins.empty() &&
            coord_distance(c, res.argmins.back().coord) <= 4.0 * h)
            continue;
        CriticalPoint cp;
        cp.coord = c;
        cp.point = exp_map(base, c);
        cp.value = t.value;
        cp.is_local_min = true;
        res.argmins.push_back(cp);
    }
    // plateau ties adjacent across the seam collapse to one representative
    if (res.argmins.size() > 1 &&
        coord_distance(res.argmins.front().coord, res.argmins.back().coord) <= 4.0 * h &&
        flat)
        res.argmins.pop_back();
    res.unique = res.argmins.size() == 1 && !flat;
    res.runner_up_gap = runner_up - best;
    return res;
}

}  // namespace circmean
