#include "specest/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "specest/errors.hpp"
#include "specest/io_util.hpp"
#include "specest/mp_kernels.hpp"

namespace specest {

DictionarySpec DictionarySpec::points_only() {
    DictionarySpec spec;
    spec.include_uniform = false;
    spec.include_linear_inc = false;
    spec.include_linear_dec = false;
    return spec;
}

DictionarySpec DictionarySpec::full() { return DictionarySpec{}; }

std::vector<BasisMeasure> build_dictionary(const DictionarySpec& spec) {
    if (!spec.support) throw std::invalid_argument("dictionary support not set");
    auto [lo, hi] = *spec.support;
    if (!(lo >= 0.0) || !(hi >= lo)) throw std::invalid_argument("bad dictionary support");
    if (!(spec.point_mass_spacing > 0.0)) throw std::invalid_argument("spacing must be > 0");

    std::vector<BasisMeasure> dict;
    double width = hi - lo;

    int count = static_cast<int>(std::floor(width / spec.point_mass_spacing + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) {
        double t = lo + static_cast<double>(i) * spec.point_mass_spacing;
        dict.push_back(BasisMeasure::point_mass(std::min(t, hi)));
    }

    if (spec.any_interval_shape() && width > 0.0) {
        if (spec.scale_max < spec.scale_min)
            throw std::invalid_argument("dictionary needs a nonempty scale range");
        for (int k = spec.scale_min; k <= spec.scale_max; ++k) {
            int pieces = 1 << k;
            for (int j = 0; j < pieces; ++j) {
                double a = lo + width * static_cast<double>(j) / pieces;
                double b = (j + 1 == pieces) ? hi : lo + width * static_cast<double>(j + 1) / pieces;
                if (spec.include_uniform) dict.push_back(BasisMeasure::uniform(a, b));
                if (spec.include_linear_inc) dict.push_back(BasisMeasure::linear_inc(a, b));
                if (spec.include_linear_dec) dict.push_back(BasisMeasure::linear_dec(a, b));
            }
        }
    }
    return dict;
}

LinearProgram assemble_lp(std::span<const GridPair> pairs,
                          std::span<const BasisMeasure> dictionary, double c,
                          std::optional<double> moment_target) {
    if (pairs.empty()) throw std::invalid_argument("assemble_lp needs at least one pair");
    if (dictionary.empty()) throw std::invalid_argument("assemble_lp needs a dictionary");

    const std::size_t n_atoms = dictionary.size();
    const std::size_t n_vars = n_atoms + 1;  // weights + u
    const std::size_t u_col = n_atoms;

    std::vector<std::complex<double>> v_values(pairs.size());
    for (std::size_t j = 0; j < pairs.size(); ++j) v_values[j] = pairs[j].v;
    KernelMatrix km = KernelMatrix::build(std::move(v_values),
                                          {dictionary.begin(), dictionary.end()});

    LinearProgram lp;
    lp.objective.assign(n_vars, 0.0);
    lp.objective[u_col] = 1.0;

    lp.ineq_lhs.reserve(pairs.size() * 4);
    lp.ineq_rhs.reserve(pairs.size() * 4);
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        std::complex<double> base = 1.0 / pairs[j].v + pairs[j].z;
        // e_j = base - sum_k coef_k w_k with coef_k = c * A[j][k].
        // Re(e_j) <= u  and  -Re(e_j) <= u, same for Im.
        std::vector<double> upper(n_vars, 0.0), lower(n_vars, 0.0);
        for (int part = 0; part < 2; ++part) {
            auto comp = [part](std::complex<double> w) {
                return part == 0 ? w.real() : w.imag();
            };
            std::fill(upper.begin(), upper.end(), 0.0);
            std::fill(lower.begin(), lower.end(), 0.0);
            for (std::size_t k = 0; k < n_atoms; ++k) {
                double coef = c * comp(km.at(j, k));
                upper[k] = -coef;
                lower[k] = coef;
            }
            upper[u_col] = -1.0;
            lower[u_col] = -1.0;
            // Re/Im(e_j) <= u  becomes  -sum coef_k w_k - u <= -Re/Im(base);
            // -u <= Re/Im(e_j) becomes  +sum coef_k w_k - u <= +Re/Im(base).
            lp.ineq_lhs.push_back(upper);
            lp.ineq_rhs.push_back(-comp(base));
            lp.ineq_lhs.push_back(lower);
            lp.ineq_rhs.push_back(comp(base));
        }
    }

    std::vector<double> weight_sum(n_vars, 0.0);
    std::fill(weight_sum.begin(), weight_sum.begin() + static_cast<long>(n_atoms), 1.0);
    lp.eq_lhs.push_back(std::move(weight_sum));
    lp.eq_rhs.push_back(1.0);

    if (moment_target) {
        std::vector<double> moments(n_vars, 0.0);
        for (std::size_t k = 0; k < n_atoms; ++k) moments[k] = first_moment(dictionary[k]);
        lp.eq_lhs.push_back(std::move(moments));
        lp.eq_rhs.push_back(*moment_target);
    }
    return lp;
}

std::string IsolatedMassWarning::message() const {
    return "isolated point mass at " + fmt_double(location) + " carries weight " +
           fmt_double(weight) + "; quantile extraction may miss it";
}

namespace {

double atom_distance(const BasisMeasure& from_point, const BasisMeasure& other) {
    double t = from_point.location();
    if (other.is_point()) return std::abs(t - other.location());
    if (t < other.lower()) return other.lower() - t;
    if (t > other.upper()) return t - other.upper();
    return 0.0;
}

}  // namespace

std::vector<IsolatedMassWarning> isolated_mass_check(const EstimateResult& result, int p) {
    if (p < 1) throw std::invalid_argument("p must be >= 1");
    const auto& dist = result.distribution;
    double threshold_weight = 1.0 / static_cast<double>(p + 1);
    double width = dist.support_max() - dist.support_min();
    std::vector<IsolatedMassWarning> warnings;
    if (width <= 0.0) return warnings;

    for (std::size_t i = 0; i < dist.size(); ++i) {
        const auto& atom = dist.atoms()[i];
        double w = dist.weights()[i];
        if (!atom.is_point()) continue;
        if (!(w > 0.0 && w < threshold_weight)) continue;
        double gap = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < dist.size(); ++k) {
            if (k == i || dist.weights()[k] <= 0.0) continue;
            gap = std::min(gap, atom_distance(atom, dist.atoms()[k]));
        }
        if (gap > 0.10 * width)
            warnings.push_back({i, atom.location(), w});
    }
    return warnings;
}

EstimateResult estimate_from_pairs(std::span<const GridPair> pairs,
                                   std::vector<BasisMeasure> dictionary, double c,
                                   std::optional<double> moment_target) {
    LinearProgram lp = assemble_lp(pairs, dictionary, c, moment_target);
    LpSolution sol = solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw EstimationError("lp", std::string("solver returned ") + lp_status_name(sol.status));

    const std::size_t n_atoms = dictionary.size();
    std::vector<double> raw(sol.x.begin(), sol.x.begin() + static_cast<long>(n_atoms));

    // Residual diagnostics from the raw LP weights.
    std::vector<std::complex<double>> v_values(pairs.size());
    for (std::size_t j = 0; j < pairs.size(); ++j) v_values[j] = pairs[j].v;
    KernelMatrix km = KernelMatrix::build(std::move(v_values), dictionary);
    auto residuals = mp_residual(raw, km, pairs, c);

    // Simplex zeros are exact; anything slightly negative is noise.
    std::vector<BasisMeasure> kept_atoms;
    std::vector<double> kept_weights;
    double sum = 0.0;
    for (std::size_t k = 0; k < n_atoms; ++k) {
        double w = raw[k] < 0.0 ? 0.0 : raw[k];
        if (w > 0.0) {
            kept_atoms.push_back(dictionary[k]);
            kept_weights.push_back(w);
            sum += w;
        }
    }
    if (kept_atoms.empty() || !(sum > 0.0))
        throw EstimationError("extraction", "all weights vanished");
    for (double& w : kept_weights) w /= sum;

    EstimateResult result{
        SpectralDistribution(std::move(kept_atoms), std::move(kept_weights)),
        sol.objective_value,
        std::move(raw),
        std::move(dictionary),
        pairs.size(),
        1.0,
        {std::move(residuals), {}, sol.iterations}};
    return result;
}

EstimateResult estimate(const EmpiricalSpectrum& spec, const GridConfig& grid_cfg,
                        const DictionarySpec& dict_spec, bool moment_constraint) {
    if (spec.p() < 2) throw std::invalid_argument("estimate needs p >= 2");
    double l1 = spec.largest();
    if (!(l1 > 0.0))
        throw DegenerateSpectrumError("largest sample eigenvalue must be positive");

    EmpiricalSpectrum scaled = spec.scaled(1.0 / l1);

    std::vector<GridPair> pairs;
    try {
        pairs = build_grid(scaled, grid_cfg);
    } catch (const TooFewPairsError& e) {
        throw EstimationError("grid", e.what());
    }

    DictionarySpec dict = dict_spec;
    dict.support = {scaled.smallest(), 1.0};
    std::vector<BasisMeasure> dictionary;
    try {
        dictionary = build_dictionary(dict);
    } catch (const std::invalid_argument& e) {
        throw EstimationError("dictionary", e.what());
    }

    std::optional<double> moment_target;
    if (moment_constraint) moment_target = scaled.mean();

    EstimateResult result = estimate_from_pairs(pairs, std::move(dictionary),
                                                scaled.ratio(), moment_target);

    // Back to original units: x -> l1 * x.
    result.distribution = result.distribution.scaled(l1);
    std::vector<BasisMeasure> unscaled;
    unscaled.reserve(result.dictionary.size());
    for (const auto& m : result.dictionary) unscaled.push_back(m.scaled(l1));
    result.dictionary = std::move(unscaled);
    result.scale_factor = l1;
    result.diagnostics.warnings = isolated_mass_check(result, spec.p());
    return result;
}

nlohmann::json estimate_result_to_json(const EstimateResult& result) {
    nlohmann::json j;
    j["distribution"] = distribution_to_json(result.distribution);
    j["objective"] = result.objective;
    j["scale_factor"] = result.scale_factor;
    j["grid_pairs_used"] = result.grid_pairs_used;
    j["lp_iterations"] = result.diagnostics.lp_iterations;
    nlohmann::json warnings = nlohmann::json::array();
    for (const auto& w : result.diagnostics.warnings) warnings.push_back(w.message());
    j["warnings"] = std::move(warnings);
    return j;
}

}  // namespace specest
