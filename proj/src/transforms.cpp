#include "specest/transforms.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace specest {

namespace {

void require_upper_half(Complex z, const char* what) {
    if (!(z.imag() > 0.0)) throw std::invalid_argument(std::string(what) + " needs Im z > 0");
}

}  // namespace

Complex stieltjes(const BasisMeasure& m, Complex z) {
    require_upper_half(z, "stieltjes");
    switch (m.kind()) {
        case MeasureKind::PointMass:
            return 1.0 / (m.location() - z);
        case MeasureKind::Uniform: {
            // (1/L) [log(b-z) - log(a-z)]; both arguments sit in the lower
            // half-plane, so the principal branch is continuous along the path.
            Complex diff = std::log(m.upper() - z) - std::log(m.lower() - z);
            return diff / m.length();
        }
        case MeasureKind::LinearInc: {
            double len = m.length();
            Complex diff = std::log(m.upper() - z) - std::log(m.lower() - z);
            return 2.0 / (len * len) * (len + (z - m.lower()) * diff);
        }
        case MeasureKind::LinearDec: {
            double len = m.length();
            Complex diff = std::log(m.upper() - z) - std::log(m.lower() - z);
            return 2.0 / (len * len) * (-len + (m.upper() - z) * diff);
        }
    }
    return {};
}

Complex stieltjes(const SpectralDistribution& dist, Complex z) {
    require_upper_half(z, "stieltjes");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i)
        acc += dist.weights()[i] * stieltjes(dist.atoms()[i], z);
    return acc;
}

Complex companion_transform(const EmpiricalSpectrum& spec, Complex z) {
    require_upper_half(z, "companion_transform");
    Complex m = 0.0;
    for (double l : spec.eigenvalues()) m += 1.0 / (l - z);
    m /= static_cast<double>(spec.p());
    double c = spec.ratio();
    return (1.0 - c) * (-1.0 / z) + c * m;
}

Complex companion_derivative(const EmpiricalSpectrum& spec, Complex z) {
    require_upper_half(z, "companion_derivative");
    Complex dm = 0.0;
    for (double l : spec.eigenvalues()) {
        Complex d = l - z;
        dm += 1.0 / (d * d);
    }
    dm /= static_cast<double>(spec.p());
    double c = spec.ratio();
    return (1.0 - c) / (z * z) + c * dm;
}

std::pair<double, double> mp_support(double gamma) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("mp_support needs gamma in (0,1]");
    double s = std::sqrt(gamma);
    return {(1.0 - s) * (1.0 - s), (1.0 + s) * (1.0 + s)};
}

double mp_law_density(double gamma, double x) {
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("mp_law_density needs gamma in (0,1]");
    if (!(x > 0.0)) throw std::invalid_argument("mp_law_density needs x > 0");
    auto [a, b] = mp_support(gamma);
    if (x <= a || x >= b) return 0.0;
    return std::sqrt((b - x) * (x - a)) / (2.0 * std::numbers::pi * x * gamma);
}

}  // namespace specest
