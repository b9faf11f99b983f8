#pragma once

#include <vector>

#include "specest/spectral_distribution.hpp"

namespace specest {

// Sample covariance eigenvalues l_1 >= ... >= l_p together with (p, n).
class EmpiricalSpectrum {
public:
    // Eigenvalues may be passed in any order; stored descending.
    EmpiricalSpectrum(std::vector<double> eigenvalues, int n);

    int p() const { return static_cast<int>(eigenvalues_.size()); }
    int n() const { return n_; }
    // Finite-sample aspect ratio c = p/n.
    double ratio() const { return static_cast<double>(p()) / static_cast<double>(n_); }

    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    double largest() const { return eigenvalues_.front(); }
    double smallest() const { return eigenvalues_.back(); }
    double mean() const;

    // F_p: mass 1/p at each sample eigenvalue.
    SpectralDistribution to_distribution() const;

    EmpiricalSpectrum scaled(double factor) const;

private:
    std::vector<double> eigenvalues_;
    int n_;
};

}  // namespace specest
