#include "specest/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "specest/errors.hpp"
#include "specest/io_util.hpp"
#include "specest/rng.hpp"

namespace specest {

CovarianceModel CovarianceModel::identity(int p) {
    CovarianceModel m;
    m.kind = Kind::Identity;
    m.p = p;
    m.validate();
    return m;
}

CovarianceModel CovarianceModel::two_point(int p, double lo, double hi, double fraction_high) {
    CovarianceModel m;
    m.kind = Kind::TwoPoint;
    m.p = p;
    m.value_low = lo;
    m.value_high = hi;
    m.fraction_high = fraction_high;
    m.validate();
    return m;
}

CovarianceModel CovarianceModel::toeplitz(int p, double rho) {
    CovarianceModel m;
    m.kind = Kind::Toeplitz;
    m.p = p;
    m.rho = rho;
    m.validate();
    return m;
}

void CovarianceModel::validate() const {
    if (p < 2) throw std::invalid_argument("covariance model needs p >= 2");
    if (kind == Kind::TwoPoint) {
        if (!(fraction_high > 0.0 && fraction_high < 1.0))
            throw std::invalid_argument("fraction_high must lie in (0,1)");
        if (!(value_low > 0.0 && value_high > 0.0))
            throw std::invalid_argument("two-point values must be positive");
    }
    if (kind == Kind::Toeplitz && !(std::abs(rho) < 1.0))
        throw std::invalid_argument("|rho| must be < 1");
}

std::string CovarianceModel::name() const {
    switch (kind) {
        case Kind::Identity: return "identity";
        case Kind::TwoPoint: return "two-point";
        case Kind::Toeplitz: return "toeplitz";
    }
    return "?";
}

namespace {

// Diagonal of the TwoPoint covariance: low values first, extra one (odd p)
// goes to the low value.
std::vector<double> two_point_diagonal(const CovarianceModel& model) {
    int n_high = static_cast<int>(std::floor(model.fraction_high * model.p));
    int n_low = model.p - n_high;
    std::vector<double> diag;
    diag.reserve(static_cast<std::size_t>(model.p));
    for (int i = 0; i < n_low; ++i) diag.push_back(model.value_low);
    for (int i = 0; i < n_high; ++i) diag.push_back(model.value_high);
    return diag;
}

SymMatrix toeplitz_matrix(int p, double rho) {
    SymMatrix t(p);
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) t.at(i, j) = std::pow(rho, std::abs(i - j));
    return t;
}

}  // namespace

PopulationSpectrum population_spectrum(const CovarianceModel& model) {
    model.validate();
    switch (model.kind) {
        case CovarianceModel::Kind::Identity: {
            std::vector<double> ones(static_cast<std::size_t>(model.p), 1.0);
            return {SpectralDistribution::dirac(1.0), std::move(ones)};
        }
        case CovarianceModel::Kind::TwoPoint: {
            auto diag = two_point_diagonal(model);
            std::vector<double> descending(diag.begin(), diag.end());
            std::sort(descending.begin(), descending.end(), std::greater<>());
            SpectralDistribution h = SpectralDistribution::point_masses(
                {model.value_low, model.value_high},
                {1.0 - model.fraction_high, model.fraction_high});
            return {std::move(h), std::move(descending)};
        }
        case CovarianceModel::Kind::Toeplitz: {
            EigenDecomposition dec = sym_eigs(toeplitz_matrix(model.p, model.rho));
            std::vector<double> w(dec.eigenvalues.size(),
                                  1.0 / static_cast<double>(model.p));
            SpectralDistribution h =
                SpectralDistribution::point_masses(dec.eigenvalues, w);
            return {std::move(h), std::move(dec.eigenvalues)};
        }
    }
    throw std::logic_error("unreachable");
}

namespace {

DataMatrix sample_gaussian(int n, int p, std::uint64_t seed) {
    DataMatrix x;
    x.rows = n;
    x.cols = p;
    x.values.resize(static_cast<std::size_t>(n) * p);
    Rng rng(seed);
    for (double& v : x.values) v = rng.next_gaussian();
    return x;
}

DataMatrix sample_with_sqrt(const CovarianceModel& model, int n, std::uint64_t seed,
                            const SymMatrix* sqrt_cov) {
    DataMatrix y = sample_gaussian(n, model.p, seed);
    switch (model.kind) {
        case CovarianceModel::Kind::Identity:
            return y;
        case CovarianceModel::Kind::TwoPoint: {
            auto diag = two_point_diagonal(model);
            for (double& d : diag) d = std::sqrt(d);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < model.p; ++j)
                    y.at(i, j) *= diag[static_cast<std::size_t>(j)];
            return y;
        }
        case CovarianceModel::Kind::Toeplitz: {
            SymMatrix local(1);
            if (sqrt_cov == nullptr) {
                local = sym_sqrt(toeplitz_matrix(model.p, model.rho));
                sqrt_cov = &local;
            }
            DataMatrix x;
            x.rows = n;
            x.cols = model.p;
            x.values.assign(static_cast<std::size_t>(n) * model.p, 0.0);
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < model.p; ++k) {
                    double yik = y.at(i, k);
                    if (yik == 0.0) continue;
                    for (int j = 0; j < model.p; ++j) x.at(i, j) += yik * sqrt_cov->at(k, j);
                }
            return x;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

DataMatrix sample_data(const CovarianceModel& model, int n, std::uint64_t seed) {
    if (n < 2) throw std::invalid_argument("sample_data needs n >= 2");
    model.validate();
    return sample_with_sqrt(model, n, seed, nullptr);
}

namespace {

double median_sorted(const std::vector<double>& sorted) {
    if (sorted.empty()) return 0.0;
    std::size_t m = sorted.size();
    return m % 2 == 1 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
}

double quartile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    double pos = q * static_cast<double>(sorted.size() - 1);
    std::size_t lo = static_cast<std::size_t>(std::floor(pos));
    std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    double frac = pos - static_cast<double>(lo);
    return sorted[lo] * (1.0 - frac) + sorted[hi] * frac;
}

}  // namespace

McReport monte_carlo(const CovarianceModel& model, int n, int reps,
                     std::uint64_t master_seed, const EstimatorConfig& config,
                     int threads) {
    if (reps < 1) throw std::invalid_argument("monte_carlo needs reps >= 1");
    model.validate();

    McReport report;
    report.model = model;
    report.n = n;
    report.reps = reps;
    report.master_seed = master_seed;
    PopulationSpectrum pop = population_spectrum(model);
    report.population = pop.distribution;
    report.records.assign(static_cast<std::size_t>(reps), RepRecord{});

    // One square root shared by every repetition (read-only).
    SymMatrix sqrt_cov(1);
    const SymMatrix* sqrt_ptr = nullptr;
    if (model.kind == CovarianceModel::Kind::Toeplitz) {
        sqrt_cov = sym_sqrt(toeplitz_matrix(model.p, model.rho));
        sqrt_ptr = &sqrt_cov;
    }

    std::vector<std::optional<CdfOverlay>> overlays(static_cast<std::size_t>(reps));

    auto run_rep = [&](int r) {
        RepRecord rec;
        rec.rep = r;
        rec.seed = Rng::split(master_seed, static_cast<std::uint64_t>(r));
        auto t0 = std::chrono::steady_clock::now();
        try {
            DataMatrix x = sample_with_sqrt(model, n, rec.seed, sqrt_ptr);
            EmpiricalSpectrum fp = scm_eigenvalues(x, false);
            EstimateResult est = estimate(fp, config.grid, config.dict,
                                          config.moment_constraint);
            rec.levy_est = levy_distance(est.distribution, pop.distribution);
            rec.levy_raw = levy_distance(fp.to_distribution(), pop.distribution);
            rec.ratio = rec.levy_raw > 0.0 ? rec.levy_est / rec.levy_raw
                                           : std::numeric_limits<double>::infinity();
            rec.objective = est.objective;
            rec.ok = true;
            overlays[static_cast<std::size_t>(r)] =
                CdfOverlay{fp.to_distribution(), est.distribution};
        } catch (const std::exception& e) {
            rec.ok = false;
            rec.failure = e.what();
        }
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
        report.records[static_cast<std::size_t>(r)] = std::move(rec);
    };

    int worker_count = threads > 0 ? threads
                                   : static_cast<int>(std::thread::hardware_concurrency());
    worker_count = std::max(1, std::min(worker_count, reps));
    if (worker_count == 1) {
        for (int r = 0; r < reps; ++r) run_rep(r);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(worker_count));
        for (int w = 0; w < worker_count; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    int r = next.fetch_add(1);
                    if (r >= reps) break;
                    run_rep(r);
                }
            });
        for (auto& th : pool) th.join();
    }

    for (const auto& ov : overlays)
        if (ov) {
            report.overlay = ov;
            break;
        }

    std::vector<double> ratios, ests, raws;
    int bad = 0;
    int better = 0;
    for (const auto& rec : report.records) {
        if (!rec.ok) {
            ++bad;
            continue;
        }
        ratios.push_back(rec.ratio);
        ests.push_back(rec.levy_est);
        raws.push_back(rec.levy_raw);
        if (rec.levy_est < rec.levy_raw) ++better;
    }
    if (bad * 10 > reps) {
        std::string detail;
        for (const auto& rec : report.records)
            if (!rec.ok) {
                detail = rec.failure;
                break;
            }
        throw SimulationAbortedError(std::to_string(bad) + " of " + std::to_string(reps) +
                                     " repetitions failed (first failure: " + detail + ")");
    }

    std::sort(ratios.begin(), ratios.end());
    std::sort(ests.begin(), ests.end());
    std::sort(raws.begin(), raws.end());
    McSummary s;
    s.reps_total = reps;
    s.reps_ok = reps - bad;
    s.ok_fraction = s.reps_ok > 0 ? static_cast<double>(better) / s.reps_ok : 0.0;
    s.median_ratio = median_sorted(ratios);
    s.q1_ratio = quartile_sorted(ratios, 0.25);
    s.q3_ratio = quartile_sorted(ratios, 0.75);
    s.median_levy_est = median_sorted(ests);
    s.median_levy_raw = median_sorted(raws);
    report.summary = s;
    return report;
}

void write_report_csv(std::ostream& out, const McReport& report) {
    out << "rep,seed,status,levy_est,levy_raw,ratio,objective\n";
    for (const auto& rec : report.records) {
        out << rec.rep << "," << rec.seed << "," << (rec.ok ? "ok" : "failed") << ",";
        if (rec.ok) {
            out << fmt_double(rec.levy_est) << "," << fmt_double(rec.levy_raw) << ","
                << fmt_double(rec.ratio) << "," << fmt_double(rec.objective);
        } else {
            out << ",,,";
        }
        out << "\n";
    }
}

nlohmann::json summary_to_json(const McReport& report) {
    const auto& s = report.summary;
    double total_ms = 0.0;
    for (const auto& rec : report.records) total_ms += rec.wall_ms;
    return nlohmann::json{{"case", report.model.name()},
                          {"p", report.model.p},
                          {"n", report.n},
                          {"reps", s.reps_total},
                          {"reps_ok", s.reps_ok},
                          {"master_seed", report.master_seed},
                          {"ok_fraction", s.ok_fraction},
                          {"median_ratio", s.median_ratio},
                          {"q1_ratio", s.q1_ratio},
                          {"q3_ratio", s.q3_ratio},
                          {"median_levy_est", s.median_levy_est},
                          {"median_levy_raw", s.median_levy_raw},
                          {"total_wall_ms", total_ms}};
}

void write_ratio_csv(std::ostream& out, const McReport& report) {
    std::vector<double> ratios;
    for (const auto& rec : report.records)
        if (rec.ok) ratios.push_back(rec.ratio);
    std::sort(ratios.begin(), ratios.end());
    out << "ratio\n";
    for (double r : ratios) out << fmt_double(r) << "\n";
}

void write_cdf_overlay_csv(std::ostream& out, const McReport& report, int points) {
    if (!report.overlay) throw std::runtime_error("no successful repetition to plot");
    const auto& ov = *report.overlay;
    double lo = std::min({ov.sample.support_min(), ov.estimate.support_min(),
                          report.population.support_min()});
    double hi = std::max({ov.sample.support_max(), ov.estimate.support_max(),
                          report.population.support_max()});
    if (!(hi > lo)) {
        lo -= 0.5;
        hi += 0.5;
    }
    detail::CompiledCdf sample(ov.sample), est(ov.estimate), pop(report.population);
    out << "x,cdf_sample,cdf_estimate,cdf_population\n";
    for (int i = 0; i < points; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
        out << fmt_double(x) << "," << fmt_double(sample.value(x)) << ","
            << fmt_double(est.value(x)) << "," << fmt_double(pop.value(x)) << "\n";
    }
}

}  // namespace specest
