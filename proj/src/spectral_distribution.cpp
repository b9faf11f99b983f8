#include "specest/spectral_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "specest/io_util.hpp"

namespace specest {

namespace {
constexpr double kWeightSumTol = 1e-9;
}

SpectralDistribution::SpectralDistribution(std::vector<BasisMeasure> atoms,
                                           std::vector<double> weights)
    : atoms_(std::move(atoms)), weights_(std::move(weights)) {
    if (atoms_.empty()) throw std::invalid_argument("distribution needs at least one atom");
    if (atoms_.size() != weights_.size())
        throw std::invalid_argument("atoms and weights must have equal length");
    double sum = 0.0;
    for (double w : weights_) {
        if (!(w >= 0.0)) throw std::invalid_argument("weights must be nonnegative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kWeightSumTol)
        throw std::invalid_argument("weights must sum to 1 within 1e-9, got " + fmt_double(sum));
    support_min_ = std::numeric_limits<double>::infinity();
    support_max_ = -std::numeric_limits<double>::infinity();
    for (const auto& m : atoms_) {
        support_min_ = std::min(support_min_, m.support_min());
        support_max_ = std::max(support_max_, m.support_max());
    }
}

SpectralDistribution SpectralDistribution::dirac(double t) {
    return SpectralDistribution({BasisMeasure::point_mass(t)}, {1.0});
}

SpectralDistribution SpectralDistribution::point_masses(const std::vector<double>& locations,
                                                        const std::vector<double>& weights) {
    std::vector<BasisMeasure> atoms;
    atoms.reserve(locations.size());
    for (double t : locations) atoms.push_back(BasisMeasure::point_mass(t));
    return SpectralDistribution(std::move(atoms), weights);
}

SpectralDistribution SpectralDistribution::scaled(double factor) const {
    std::vector<BasisMeasure> atoms;
    atoms.reserve(atoms_.size());
    for (const auto& m : atoms_) atoms.push_back(m.scaled(factor));
    return SpectralDistribution(std::move(atoms), weights_);
}

double cdf_eval(const SpectralDistribution& dist, double x) {
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        acc += dist.weights()[i] * dist.atoms()[i].cdf(x);
    return std::min(1.0, std::max(0.0, acc));
}

namespace detail {

CompiledCdf::CompiledCdf(const SpectralDistribution& dist) {
    const auto& atoms = dist.atoms();
    const auto& weights = dist.weights();

    points_.reserve(atoms.size() * 2);
    for (const auto& m : atoms) {
        points_.push_back(m.support_min());
        if (!m.is_point()) points_.push_back(m.support_max());
    }
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());

    const std::size_t m = points_.size();
    cdf_at_.assign(m, 0.0);
    left_limit_.assign(m, 0.0);
    lin_.assign(m, 0.0);
    quad_.assign(m, 0.0);

    for (std::size_t i = 0; i < m; ++i) {
        double x = points_[i];
        double val = 0.0, jump = 0.0;
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            val += weights[k] * atoms[k].cdf(x);
            if (atoms[k].is_point() && atoms[k].location() == x) jump += weights[k];
        }
        cdf_at_[i] = val;
        left_limit_[i] = val - jump;
    }
    // Drift guard: the last breakpoint carries the full mass.
    cdf_at_[m - 1] = 1.0;

    // Segment polynomial pieces: on (b_i, b_{i+1}) the CDF is
    // cdf_at_[i] + lin*dx + quad*dx^2 with dx = x - b_i. Interval atoms either
    // contain the whole open segment or are disjoint from it.
    for (std::size_t i = 0; i + 1 < m; ++i) {
        double s = points_[i];
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            const auto& atom = atoms[k];
            if (atom.is_point()) continue;
            if (atom.lower() > s || atom.upper() <= s) continue;
            double w = weights[k], len = atom.length();
            switch (atom.kind()) {
                case MeasureKind::Uniform:
                    lin_[i] += w / len;
                    break;
                case MeasureKind::LinearInc:
                    lin_[i] += 2.0 * w * (s - atom.lower()) / (len * len);
                    quad_[i] += w / (len * len);
                    break;
                case MeasureKind::LinearDec:
                    lin_[i] += 2.0 * w * (atom.upper() - s) / (len * len);
                    quad_[i] -= w / (len * len);
                    break;
                default:
                    break;
            }
        }
    }
}

double CompiledCdf::value(double x) const {
    if (points_.empty()) return 0.0;
    if (x < points_.front()) return 0.0;
    if (x >= points_.back()) return 1.0;
    // Last breakpoint <= x.
    auto it = std::upper_bound(points_.begin(), points_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - points_.begin()) - 1;
    double dx = x - points_[i];
    double v = cdf_at_[i] + dx * (lin_[i] + dx * quad_[i]);
    return std::min(1.0, std::max(0.0, v));
}

double CompiledCdf::quantile(double q) const {
    // First breakpoint whose right-continuous CDF reaches q.
    std::size_t i = 0;
    while (i < points_.size() && cdf_at_[i] < q) ++i;
    if (i == points_.size()) return points_.back();
    if (i == 0) return points_[0];
    if (left_limit_[i] < q) return points_[i];  // q inside the jump at b_i
    // q is attained on the open segment before b_i; bisect the monotone piece.
    double lo = 0.0, hi = points_[i] - points_[i - 1];
    double base = cdf_at_[i - 1], lin = lin_[i - 1], quad = quad_[i - 1];
    for (int iter = 0; iter < 80 && hi - lo > 0.0; ++iter) {
        double mid = 0.5 * (lo + hi);
        double v = base + mid * (lin + mid * quad);
        if (v >= q)
            hi = mid;
        else
            lo = mid;
    }
    return points_[i - 1] + hi;
}

}  // namespace detail

double quantile(const SpectralDistribution& dist, double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("quantile level must lie in (0,1)");
    return detail::CompiledCdf(dist).quantile(q);
}

std::vector<double> population_eigenvalues(const SpectralDistribution& dist, int p) {
    if (p < 1) throw std::invalid_argument("p must be >= 1");
    detail::CompiledCdf cdf(dist);
    std::vector<double> lambda(static_cast<std::size_t>(p));
    for (int i = 1; i <= p; ++i) {
        double level = static_cast<double>(p + 1 - i) / static_cast<double>(p + 1);
        lambda[static_cast<std::size_t>(i - 1)] = cdf.quantile(level);
    }
    return lambda;
}

namespace {

// One-sided check of the Levy inequalities at epsilon: for every candidate x,
//   F(x-eps)-eps <= G(x)  and  G(x) <= F(x+eps)+eps.
bool levy_feasible(const detail::CompiledCdf& f, const detail::CompiledCdf& g, double eps,
                   double lo, double hi) {
    constexpr double kGridStep = 1e-4;
    auto violated = [&](double x) {
        double gx = g.value(x);
        return f.value(x - eps) - eps > gx || gx > f.value(x + eps) + eps;
    };
    for (double b : f.breakpoints()) {
        if (violated(b) || violated(b - eps) || violated(b + eps)) return false;
    }
    for (double b : g.breakpoints()) {
        if (violated(b) || violated(b - eps) || violated(b + eps)) return false;
    }
    double start = lo - eps - kGridStep;
    double stop = hi + eps + kGridStep;
    auto steps = static_cast<long long>(std::ceil((stop - start) / kGridStep));
    for (long long k = 0; k <= steps; ++k) {
        if (violated(start + static_cast<double>(k) * kGridStep)) return false;
    }
    return true;
}

}  // namespace

double levy_distance(const SpectralDistribution& fd, const SpectralDistribution& gd) {
    detail::CompiledCdf f(fd), g(gd);
    double lo_support = std::min(fd.support_min(), gd.support_min());
    double hi_support = std::max(fd.support_max(), gd.support_max());
    if (levy_feasible(f, g, 0.0, lo_support, hi_support)) return 0.0;
    // d_L <= 1 always: at eps=1 both inequalities are vacuous for CDFs.
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-6) {
        double mid = 0.5 * (lo + hi);
        if (levy_feasible(f, g, mid, lo_support, hi_support))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

nlohmann::json distribution_to_json(const SpectralDistribution& dist) {
    nlohmann::json atoms = nlohmann::json::array();
    for (const auto& m : dist.atoms()) {
        nlohmann::json a;
        a["kind"] = kind_name(m.kind());
        if (m.is_point()) {
            a["t"] = m.location();
        } else {
            a["a"] = m.lower();
            a["b"] = m.upper();
        }
        atoms.push_back(std::move(a));
    }
    return nlohmann::json{{"atoms", std::move(atoms)}, {"weights", dist.weights()}};
}

SpectralDistribution distribution_from_json(const nlohmann::json& j) {
    std::vector<BasisMeasure> atoms;
    for (const auto& a : j.at("atoms")) {
        std::string kind = a.at("kind").get<std::string>();
        if (kind == "point") {
            atoms.push_back(BasisMeasure::point_mass(a.at("t").get<double>()));
        } else {
            double lo = a.at("a").get<double>(), hi = a.at("b").get<double>();
            if (kind == "uniform")
                atoms.push_back(BasisMeasure::uniform(lo, hi));
            else if (kind == "linear_inc")
                atoms.push_back(BasisMeasure::linear_inc(lo, hi));
            else if (kind == "linear_dec")
                atoms.push_back(BasisMeasure::linear_dec(lo, hi));
            else
                throw std::invalid_argument("unknown atom kind: " + kind);
        }
    }
    return SpectralDistribution(std::move(atoms), j.at("weights").get<std::vector<double>>());
}

void write_cdf_csv(std::ostream& out, const SpectralDistribution& dist,
                   std::span<const double> grid) {
    detail::CompiledCdf cdf(dist);
    out << "x,cdf\n";
    for (double x : grid) out << fmt_double(x) << "," << fmt_double(cdf.value(x)) << "\n";
}

std::vector<double> default_cdf_grid(const SpectralDistribution& dist, int points) {
    if (points < 2) throw std::invalid_argument("grid needs at least 2 points");
    double lo = dist.support_min(), hi = dist.support_max();
    if (hi - lo <= 0.0) {
        double pad = std::max(0.5, std::abs(lo) * 0.1);
        lo -= pad;
        hi += pad;
    }
    std::vector<double> grid(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        grid[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    return grid;
}

}  // namespace specest
