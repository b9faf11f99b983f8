#include "specest/grid_builder.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "specest/errors.hpp"
#include "specest/io_util.hpp"
#include "specest/transforms.hpp"

namespace specest {

namespace {

constexpr double kMinImag = 1e-8;

// Points at spacing s on [lo, hi], robust to the quotient landing just
// below an integer.
int segment_count(double lo, double hi, double spacing) {
    return static_cast<int>(std::floor((hi - lo) / spacing + 1e-9)) + 1;
}

}  // namespace

void GridConfig::validate() const {
    if (!(real_spacing > 0.0)) throw std::invalid_argument("grid spacing must be > 0");
    if (!(real_max >= real_min)) throw std::invalid_argument("grid range must have max >= min");
    if (imag_levels.empty()) throw std::invalid_argument("grid needs at least one imaginary level");
    for (double level : imag_levels)
        if (!(level > 0.0)) throw std::invalid_argument("imaginary levels must be > 0");
    if (newton_max_iter < 1) throw std::invalid_argument("newton_max_iter must be >= 1");
}

std::vector<std::complex<double>> build_v_targets(const GridConfig& cfg) {
    cfg.validate();
    int count = segment_count(cfg.real_min, cfg.real_max, cfg.real_spacing);
    std::vector<std::complex<double>> targets;
    targets.reserve(static_cast<std::size_t>(count) * cfg.imag_levels.size());
    for (double level : cfg.imag_levels) {
        for (int i = 0; i < count; ++i) {
            double re = cfg.real_min + static_cast<double>(i) * cfg.real_spacing;
            if (re > cfg.real_max) re = cfg.real_max;
            targets.emplace_back(re, level);
        }
    }
    return targets;
}

std::optional<std::complex<double>> invert_v(const EmpiricalSpectrum& spec,
                                             std::complex<double> v_target,
                                             double tol, int max_iter) {
    if (!(v_target.imag() > 0.0))
        throw std::invalid_argument("invert_v needs Im v_target > 0");
    std::complex<double> z = -1.0 / v_target;
    if (z.imag() < kMinImag) z = {z.real(), kMinImag};
    double goal = tol * (1.0 + std::abs(v_target));
    for (int iter = 0; iter < max_iter; ++iter) {
        std::complex<double> f = companion_transform(spec, z) - v_target;
        if (std::abs(f) <= goal) return z;
        std::complex<double> df = companion_derivative(spec, z);
        if (!(std::abs(df) > 0.0)) return std::nullopt;
        z -= f / df;
        if (!(z.imag() > 0.0) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return std::nullopt;
            z = {z.real(), kMinImag};
        }
    }
    return std::nullopt;
}

std::vector<GridPair> build_grid(const EmpiricalSpectrum& spec, const GridConfig& cfg) {
    cfg.validate();
    std::vector<GridPair> pairs;
    std::size_t requested = 0;
    if (cfg.mode == GridMode::VFirst) {
        auto targets = build_v_targets(cfg);
        requested = targets.size();
        pairs.reserve(targets.size());
        for (auto v_target : targets) {
            auto z = invert_v(spec, v_target, cfg.newton_tol, cfg.newton_max_iter);
            if (!z) continue;  // non-convergent target dropped, never fabricated
            pairs.push_back({*z, companion_transform(spec, *z)});
        }
    } else {
        int count = segment_count(cfg.real_min, cfg.real_max, cfg.real_spacing);
        for (double level : cfg.imag_levels) {
            for (int i = 0; i < count; ++i) {
                double re = cfg.real_min + static_cast<double>(i) * cfg.real_spacing;
                if (re > cfg.real_max) re = cfg.real_max;
                std::complex<double> z{re, level};
                pairs.push_back({z, companion_transform(spec, z)});
            }
        }
        requested = pairs.size();
    }
    // Full-size grids must keep at least 10 pairs; a deliberately tiny grid
    // only has its own size to meet.
    std::size_t needed = std::min<std::size_t>(10, requested);
    if (pairs.size() < needed)
        throw TooFewPairsError("grid kept only " + std::to_string(pairs.size()) + " of " +
                               std::to_string(requested) + " pairs (need " +
                               std::to_string(needed) + ")");
    return pairs;
}

void write_grid_csv(std::ostream& out, std::span<const GridPair> pairs) {
    out << "re_z,im_z,re_v,im_v\n";
    for (const auto& pr : pairs)
        out << fmt_double(pr.z.real()) << "," << fmt_double(pr.z.imag()) << ","
            << fmt_double(pr.v.real()) << "," << fmt_double(pr.v.imag()) << "\n";
}

}  // namespace specest
