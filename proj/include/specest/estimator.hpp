#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "specest/empirical_spectrum.hpp"
#include "specest/grid_builder.hpp"
#include "specest/lp_solver.hpp"
#include "specest/spectral_distribution.hpp"

#include "json.hpp"

namespace specest {

// Dictionary layout in scaled eigenvalue units: point masses on a regular
// grid over the support, plus (optionally) dyadic-interval densities of the
// three interval shapes at scales [scale_min, scale_max].
struct DictionarySpec {
    double point_mass_spacing = 0.005;
    int scale_min = 2;
    int scale_max = 8;
    bool include_uniform = true;
    bool include_linear_inc = true;
    bool include_linear_dec = true;
    // Filled by the estimation pipeline from the scaled spectrum; must be set
    // before calling build_dictionary directly.
    std::optional<std::pair<double, double>> support;

    bool any_interval_shape() const {
        return include_uniform || include_linear_inc || include_linear_dec;
    }

    static DictionarySpec points_only();
    static DictionarySpec full();
};

// Point masses ascending, then dyadic intervals ordered by
// (scale, index, shape); deterministic.
std::vector<BasisMeasure> build_dictionary(const DictionarySpec& spec);

// The L-infinity inversion LP over variables (w_1..w_K, u):
//   minimize u
//   -u <= Re(e_j) <= u, -u <= Im(e_j) <= u   for every pair j,
//   sum_k w_k = 1, w_k >= 0,
//   optionally sum_k first_moment(M_k) w_k = moment_target,
// with e_j(w) = (1/v_j + z_j) - c * sum_k K(M_k, v_j) w_k.
LinearProgram assemble_lp(std::span<const GridPair> pairs,
                          std::span<const BasisMeasure> dictionary, double c,
                          std::optional<double> moment_target = std::nullopt);

struct IsolatedMassWarning {
    std::size_t atom_index;
    double location;
    double weight;
    std::string message() const;
};

struct EstimateDiagnostics {
    std::vector<std::complex<double>> per_pair_residuals;  // from raw weights
    std::vector<IsolatedMassWarning> warnings;
    int lp_iterations = 0;
};

struct EstimateResult {
    SpectralDistribution distribution;  // original eigenvalue units
    double objective = 0.0;             // achieved L-infinity residual
    std::vector<double> raw_weights;    // LP weights before clamp/renormalize
    std::vector<BasisMeasure> dictionary;  // original units, aligned with raw_weights
    std::size_t grid_pairs_used = 0;
    double scale_factor = 1.0;          // l_1
    EstimateDiagnostics diagnostics;
};

// Core solve in the caller's units: assembles the LP for the given pairs and
// dictionary, solves it, clamps/renormalizes weights and packages the result
// (scale_factor = 1). Used by estimate() and by synthetic forward-model runs.
EstimateResult estimate_from_pairs(std::span<const GridPair> pairs,
                                   std::vector<BasisMeasure> dictionary, double c,
                                   std::optional<double> moment_target = std::nullopt);

// Full pipeline: scale by l_1, build grid and dictionary on [l_p/l_1, 1],
// solve, then map the result back to original units. The moment constraint
// targets the scaled trace mean(l_i)/l_1.
EstimateResult estimate(const EmpiricalSpectrum& spec, const GridConfig& grid_cfg,
                        const DictionarySpec& dict_spec, bool moment_constraint = false);

// Flags point-mass atoms whose weight lies in (0, 1/(p+1)) and whose support
// is separated from everything else by more than 10% of the support width:
// the regime where quantile extraction can miss the atom.
std::vector<IsolatedMassWarning> isolated_mass_check(const EstimateResult& result, int p);

nlohmann::json estimate_result_to_json(const EstimateResult& result);

}  // namespace specest
