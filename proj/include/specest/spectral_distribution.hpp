#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "specest/basis_measure.hpp"

#include "json.hpp"

namespace specest {

// A finite mixture of basis measures with nonnegative weights summing to 1.
// Immutable after construction; safe to share across threads.
class SpectralDistribution {
public:
    SpectralDistribution(std::vector<BasisMeasure> atoms, std::vector<double> weights);

    static SpectralDistribution dirac(double t);
    static SpectralDistribution point_masses(const std::vector<double>& locations,
                                             const std::vector<double>& weights);

    const std::vector<BasisMeasure>& atoms() const { return atoms_; }
    const std::vector<double>& weights() const { return weights_; }
    std::size_t size() const { return atoms_.size(); }

    double support_min() const { return support_min_; }
    double support_max() const { return support_max_; }

    SpectralDistribution scaled(double factor) const;

private:
    std::vector<BasisMeasure> atoms_;
    std::vector<double> weights_;
    double support_min_;
    double support_max_;
};

// Mixture CDF, right-continuous; clamps to 0/1 outside the support.
double cdf_eval(const SpectralDistribution& dist, double x);

// Generalized inverse CDF, inf{x : CDF(x) >= q}; rejects q outside (0,1).
double quantile(const SpectralDistribution& dist, double q);

// lambda_hat_i = quantile at (p+1-i)/(p+1) for i = 1..p, returned descending.
std::vector<double> population_eigenvalues(const SpectralDistribution& dist, int p);

// Levy distance between two compactly supported distributions, to 1e-6
// absolute accuracy. Bisection on epsilon; the defining inequalities are
// checked on both distributions' breakpoints, those breakpoints shifted by
// +-epsilon, and a uniform refinement grid of step <= 1e-4 over the joint
// support.
double levy_distance(const SpectralDistribution& f, const SpectralDistribution& g);

// JSON schema: {"atoms":[{"kind":"point","t":..}|{"kind":"uniform","a":..,"b":..}|...],
//               "weights":[...]}
nlohmann::json distribution_to_json(const SpectralDistribution& dist);
SpectralDistribution distribution_from_json(const nlohmann::json& j);

// Two-column CSV "x,cdf" at the supplied grid.
void write_cdf_csv(std::ostream& out, const SpectralDistribution& dist,
                   std::span<const double> grid);

// Uniform grid over the support (padded when the support is a single point).
std::vector<double> default_cdf_grid(const SpectralDistribution& dist, int points = 1000);

namespace detail {

// Piecewise-quadratic compiled form of a mixture CDF: breakpoints plus
// per-segment polynomial coefficients. Evaluation is O(log m); quantiles are
// solved segment-locally. Built once per distribution by the operations that
// evaluate the CDF many times.
class CompiledCdf {
public:
    explicit CompiledCdf(const SpectralDistribution& dist);

    double value(double x) const;
    double quantile(double q) const;
    const std::vector<double>& breakpoints() const { return points_; }

private:
    std::vector<double> points_;      // sorted unique breakpoints
    std::vector<double> cdf_at_;      // CDF(b_i), right-continuous
    std::vector<double> left_limit_;  // CDF(b_i-)
    std::vector<double> lin_;         // per-segment linear coefficient
    std::vector<double> quad_;        // per-segment quadratic coefficient
};

}  // namespace detail

}  // namespace specest
