#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "specest/estimator.hpp"
#include "specest/linalg.hpp"
#include "specest/spectral_distribution.hpp"

#include "json.hpp"

namespace specest {

// The three simulation covariance structures.
struct CovarianceModel {
    enum class Kind { Identity, TwoPoint, Toeplitz };
    Kind kind = Kind::Identity;
    int p = 2;
    double value_low = 1.0;      // TwoPoint
    double value_high = 2.0;     // TwoPoint
    double fraction_high = 0.5;  // TwoPoint
    double rho = 0.3;            // Toeplitz entries rho^|i-j|

    static CovarianceModel identity(int p);
    static CovarianceModel two_point(int p, double lo = 1.0, double hi = 2.0,
                                     double fraction_high = 0.5);
    static CovarianceModel toeplitz(int p, double rho = 0.3);

    void validate() const;
    std::string name() const;
};

struct PopulationSpectrum {
    SpectralDistribution distribution;  // H_p
    std::vector<double> eigenvalues;    // descending
};

// H_p and the population eigenvalue vector. TwoPoint with odd p assigns the
// extra eigenvalue to the low value.
PopulationSpectrum population_spectrum(const CovarianceModel& model);

// n x p data matrix X = Y Sigma^{1/2} with Y iid standard Gaussian from the
// seeded deterministic stream. Diagonal models scale columns directly.
DataMatrix sample_data(const CovarianceModel& model, int n, std::uint64_t seed);

struct EstimatorConfig {
    GridConfig grid;
    DictionarySpec dict = DictionarySpec::points_only();
    bool moment_constraint = false;
};

struct RepRecord {
    int rep = 0;
    std::uint64_t seed = 0;
    bool ok = false;
    std::string failure;
    double levy_est = 0.0;  // d_L(H_hat, H_p)
    double levy_raw = 0.0;  // d_L(F_p, H_p)
    double ratio = 0.0;     // levy_est / levy_raw
    double objective = 0.0;
    double wall_ms = 0.0;   // excluded from the report CSV (not reproducible)
};

struct McSummary {
    int reps_total = 0;
    int reps_ok = 0;
    double ok_fraction = 0.0;  // fraction of ok reps with levy_est < levy_raw
    double median_ratio = 0.0;
    double q1_ratio = 0.0;
    double q3_ratio = 0.0;
    double median_levy_est = 0.0;
    double median_levy_raw = 0.0;
};

// CDF overlay material from the first successful repetition.
struct CdfOverlay {
    SpectralDistribution sample;    // F_p
    SpectralDistribution estimate;  // H_hat
};

struct McReport {
    CovarianceModel model;
    int n = 0;
    int reps = 0;
    std::uint64_t master_seed = 0;
    std::vector<RepRecord> records;
    McSummary summary;
    std::optional<CdfOverlay> overlay;
    SpectralDistribution population;  // H_p

    McReport() : population(SpectralDistribution::dirac(1.0)) {}
};

// Runs `reps` repetitions with per-rep seed split(master_seed, rep). Records
// for failed reps carry the failure message and are excluded from summaries.
// Throws SimulationAbortedError when more than 10% of reps fail.
// threads = 0 picks hardware concurrency; results do not depend on it.
McReport monte_carlo(const CovarianceModel& model, int n, int reps,
                     std::uint64_t master_seed, const EstimatorConfig& config,
                     int threads = 0);

// One row per rep: rep,seed,status,levy_est,levy_raw,ratio,objective.
// Deterministic bytes for a fixed (model, n, reps, master_seed, config).
void write_report_csv(std::ostream& out, const McReport& report);
nlohmann::json summary_to_json(const McReport& report);
// Sorted per-rep ratios, one per line ("ratio" header), for histograms.
void write_ratio_csv(std::ostream& out, const McReport& report);
// Common-grid CDF columns: x,cdf_sample,cdf_estimate,cdf_population.
void write_cdf_overlay_csv(std::ostream& out, const McReport& report, int points = 1000);

}  // namespace specest
