#pragma once

#include <complex>
#include <utility>

#include "specest/empirical_spectrum.hpp"
#include "specest/spectral_distribution.hpp"

namespace specest {

using Complex = std::complex<double>;

// Stieltjes transform m_G(z) = integral dG(x)/(x - z), for Im z > 0.
// Interval kinds use closed forms with the principal complex logarithm;
// the integration path stays in one half-plane so no branch is crossed.
Complex stieltjes(const BasisMeasure& m, Complex z);
Complex stieltjes(const SpectralDistribution& dist, Complex z);

// Companion transform v_{F_p}(z) = (1 - p/n)(-1/z) + (p/n) m_{F_p}(z),
// the Stieltjes transform of the spectral distribution of XX*/n.
Complex companion_transform(const EmpiricalSpectrum& spec, Complex z);

// Analytic derivative v'(z) = (1-c)/z^2 + (c/p) sum 1/(l_i - z)^2.
Complex companion_derivative(const EmpiricalSpectrum& spec, Complex z);

// Marchenko-Pastur law density for aspect ratio gamma in (0,1]:
//   f(x) = sqrt((b-x)(x-a)) / (2 pi x gamma),  a=(1-sqrt(gamma))^2, b=(1+sqrt(gamma))^2,
// zero outside [a,b].
double mp_law_density(double gamma, double x);

// Support edges {a, b} of the MP law.
std::pair<double, double> mp_support(double gamma);

}  // namespace specest
