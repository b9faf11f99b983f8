#include "specest/empirical_spectrum.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace specest {

EmpiricalSpectrum::EmpiricalSpectrum(std::vector<double> eigenvalues, int n)
    : eigenvalues_(std::move(eigenvalues)), n_(n) {
    if (eigenvalues_.empty()) throw std::invalid_argument("spectrum needs p >= 1 eigenvalues");
    if (n_ < 1) throw std::invalid_argument("sample size n must be >= 1");
    for (double l : eigenvalues_)
        if (!(l >= 0.0)) throw std::invalid_argument("covariance eigenvalues must be >= 0");
    std::sort(eigenvalues_.begin(), eigenvalues_.end(), std::greater<>());
}

double EmpiricalSpectrum::mean() const {
    return std::accumulate(eigenvalues_.begin(), eigenvalues_.end(), 0.0) /
           static_cast<double>(p());
}

SpectralDistribution EmpiricalSpectrum::to_distribution() const {
    std::vector<double> w(eigenvalues_.size(), 1.0 / static_cast<double>(p()));
    return SpectralDistribution::point_masses(eigenvalues_, w);
}

EmpiricalSpectrum EmpiricalSpectrum::scaled(double factor) const {
    std::vector<double> scaled_vals(eigenvalues_.size());
    for (std::size_t i = 0; i < eigenvalues_.size(); ++i) scaled_vals[i] = eigenvalues_[i] * factor;
    return EmpiricalSpectrum(std::move(scaled_vals), n_);
}

}  // namespace specest
