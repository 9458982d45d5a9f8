#include "circmean/consistency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "circmean/frechet.hpp"
#include "circmean/solver.hpp"
#include "circmean/uniqueness.hpp"

namespace circmean {

RhoFunction RhoFunction::from_gap(const std::function<double(double)>& f, int grid) {
    if (grid < 16) throw std::invalid_argument("rho_from_gap: grid too coarse");
    const double h = kTwoPi / grid;
    std::vector<double> fv(static_cast<std::size_t>(grid));
    double fmin = std::numeric_limits<double>::infinity();
    int imin = 0;
    for (int i = 0; i < grid; ++i) {
        const double v = f(-kPi + i * h);
        if (!(v >= -1e-12)) throw std::invalid_argument("rho_from_gap: gap must be nonnegative");
        fv[static_cast<std::size_t>(i)] = v;
        if (v < fmin) {
            fmin = v;
            imin = i;
        }
    }
    const double theta0 = -kPi + imin * h;
    // unique-zero check: away from θ0 (beyond two grid steps) the gap must
    // clear a small floor, otherwise a second zero or plateau is present
    const double floor = 1e-9;
    for (int i = 0; i < grid; ++i) {
        const int off = std::min((i - imin + grid) % grid, (imin - i + grid) % grid);
        if (off > 2 && fv[static_cast<std::size_t>(i)] - fmin <= floor)
            throw std::invalid_argument("rho_from_gap: gap does not vanish at a unique point");
    }

    RhoFunction rho;
    rho.theta0_ = theta0;
    const int half = grid / 2;
    rho.step_ = h;
    // recentered samples f̃(±t_j) and the suffix minimum over |τ| ≥ t_j
    std::vector<double> fplus(static_cast<std::size_t>(half) + 1),
        fminus(static_cast<std::size_t>(half) + 1);
    for (int j = 0; j <= half; ++j) {
        fplus[static_cast<std::size_t>(j)] = fv[static_cast<std::size_t>((imin + j) % grid)];
        fminus[static_cast<std::size_t>(j)] =
            fv[static_cast<std::size_t>((imin - j + grid) % grid)];
    }
    std::vector<double> suffix(static_cast<std::size_t>(half) + 1);
    double run = std::numeric_limits<double>::infinity();
    for (int j = half; j >= 0; --j) {
        run = std::min({run, fplus[static_cast<std::size_t>(j)],
                        fminus[static_cast<std::size_t>(j)]});
        suffix[static_cast<std::size_t>(j)] = run;
    }
    rho.g_.resize(static_cast<std::size_t>(half) + 1);
    for (int j = 0; j <= half; ++j) {
        const double own = std::min(fplus[static_cast<std::size_t>(j)],
                                    fminus[static_cast<std::size_t>(j)]);
        // min over |τ| > t_j, falling back to the own values near t = π
        const double beyond = j < half ? suffix[static_cast<std::size_t>(j) + 1] : own;
        rho.g_[static_cast<std::size_t>(j)] = std::max(0.0, std::min(own, beyond));
    }
    rho.g_integral_.resize(rho.g_.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < rho.g_.size(); ++j) {
        rho.g_integral_[j] = acc;  // left-Riemann: a deliberate underestimate
        acc += rho.g_[j] * h;
    }
    return rho;
}

double RhoFunction::operator()(double theta) const {
    if (theta <= 0.0) return 0.0;
    theta = std::min(theta, kPi);
    const std::size_t j = std::min(static_cast<std::size_t>(theta / step_), g_.size() - 1);
    // continue the prefix integral with the left node value: g is
    // nondecreasing, so this keeps ρ a valid lower bound of (1/θ)∫₀^θ g
    const double integral =
        g_integral_[j] + g_[j] * (theta - static_cast<double>(j) * step_);
    return integral / theta;
}

double concentration_envelope(double s, double x, int n) {
    if (!(s >= 0.0 && s <= kPi)) throw std::invalid_argument("envelope: s must lie in [0, π]");
    if (!(x > 0.0) || n < 1) throw std::invalid_argument("envelope: need x > 0 and n >= 1");
    const double c = 4.0 * kPi * kPi + 4.0 * kPi * kPi * s + 2.0 * s;
    return c * std::sqrt(x / n);
}

double criterion_gamma(double alpha, double phi) {
    return 0.5 * (alpha * (kPi - phi) * (kPi - phi) - phi * phi);
}

double rate_envelope(double alpha, double phi, double x, int n) {
    if (!(x > 0.0) || n < 1) throw std::invalid_argument("rate_envelope: need x > 0 and n >= 1");
    const double gamma = criterion_gamma(alpha, phi);
    if (!(gamma > 0.0))
        throw std::invalid_argument("rate_envelope: γ(α,φ) must be positive (φ < φ_α)");
    const double c = 4.0 * kPi * (2.0 * kPi * kPi + kPi + 1.0);
    const double b = c * std::max(kPi * kPi / gamma, 2.0 / alpha);
    return std::sqrt(b) * std::pow(x / n, 0.25);
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, int n, int trial) {
    return splitmix64(splitmix64(seed ^ (static_cast<std::uint64_t>(n) << 32)) ^
                      static_cast<std::uint64_t>(trial));
}

namespace {

double quantile(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0.0;
    const double pos = p * (static_cast<double>(sorted.size()) - 1.0);
    const std::size_t i = static_cast<std::size_t>(pos);
    if (i + 1 >= sorted.size()) return sorted.back();
    const double frac = pos - static_cast<double>(i);
    return sorted[i] * (1.0 - frac) + sorted[i + 1] * frac;
}

}  // namespace

ConcentrationReport simulate(const CircularMeasure& mu, const std::vector<int>& n_values,
                             int trials, std::uint64_t seed,
                             const std::vector<double>& x_values) {
    if (trials < 1) throw std::invalid_argument("simulate: trials must be >= 1");
    auto [mean_res, cert] = find_mean_and_certify(mu);
    if (!cert.holds)
        throw std::invalid_argument("simulate: measure has no certified unique mean");
    const CirclePoint p_star = mean_res.argmins.front().point;

    const ChartEvaluator ev(mu.pushforward(p_star));
    const double f_star = ev.value(0.0);
    const RhoFunction rho =
        RhoFunction::from_gap([&](double t) { return ev.value(t) - f_star; });

    ConcentrationReport report;
    report.n_values = n_values;
    report.trials = trials;
    report.seed = seed;
    report.x_values = x_values;
    report.support_diameter_arclength = mu.support_diameter();
    report.support_diameter_ambient = 2.0 * std::sin(0.5 * report.support_diameter_arclength);
    report.mean_angle = p_star.angle();
    report.certificate_margin = cert.margin;

    for (int n : n_values) {
        ConcentrationStats stats;
        stats.n = n;
        std::map<double, int> violations_arc, violations_amb;
        for (double x : x_values) {
            violations_arc[x] = 0;
            violations_amb[x] = 0;
        }
        for (int trial = 0; trial < trials; ++trial) {
            const auto pts = mu.sample(n, trial_seed(seed, n, trial));
            const MeanResult emp = frechet_mean_of_samples(pts);
            if (!emp.unique) ++stats.non_unique_trials;
            const double d = arclength_distance(emp.argmins.front().point, p_star);
            stats.distances.push_back(d);
            const double r = rho(d);
            for (double x : x_values) {
                if (r > concentration_envelope(report.support_diameter_arclength, x, n))
                    ++violations_arc[x];
                if (r > concentration_envelope(report.support_diameter_ambient, x, n))
                    ++violations_amb[x];
            }
        }
        std::vector<double> sorted = stats.distances;
        std::sort(sorted.begin(), sorted.end());
        for (double p : kQuantileProbs) stats.quantiles.push_back(quantile(sorted, p));
        stats.mean_distance =
            std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(trials);
        for (double x : x_values) {
            stats.violation_rate_arclength[x] =
                static_cast<double>(violations_arc[x]) / trials;
            stats.violation_rate_ambient[x] =
                static_cast<double>(violations_amb[x]) / trials;
        }
        report.per_n.push_back(std::move(stats));
    }
    return report;
}

}  // namespace circmean
