#include "specest/mp_kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace specest {

namespace {

using Cx = std::complex<double>;

void require_upper(Cx v) {
    if (!(v.imag() > 0.0)) throw std::invalid_argument("kernel needs Im v > 0");
}

// Analytic remainders with removable singularities at r = 0:
//   g2(r) = (log(1+r) - r) / r^2                 = -1/2 + r/3 - r^2/4 + ...
//   g3(r) = (log(1+r) - r + r^2/2) / r^3         =  1/3 - r/4 + r^2/5 - ...
//   h3(r) = ((1+r)log(1+r) - r - r^2/2) / r^3    = -1/6 + r/12 - r^2/20 + ...
// Series below |r| = 0.5, direct log above; the crossover keeps both branches
// at full double accuracy.

Cx series_g2(Cx r) {
    Cx acc = 0.0, pw = 1.0;
    for (int n = 2; n < 90; ++n) {
        double coef = (n % 2 == 0) ? -1.0 / n : 1.0 / n;
        Cx term = coef * pw;
        acc += term;
        if (std::abs(term) < 1e-18) break;
        pw *= r;
    }
    return acc;
}

Cx g2(Cx r) {
    if (std::abs(r) < 0.5) return series_g2(r);
    return (std::log(1.0 + r) - r) / (r * r);
}

Cx g3(Cx r) {
    if (std::abs(r) < 0.5) {
        Cx acc = 0.0, pw = 1.0;
        for (int n = 3; n < 90; ++n) {
            double coef = (n % 2 == 0) ? -1.0 / n : 1.0 / n;
            Cx term = coef * pw;
            acc += term;
            if (std::abs(term) < 1e-18) break;
            pw *= r;
        }
        return acc;
    }
    return (std::log(1.0 + r) - r + 0.5 * r * r) / (r * r * r);
}

Cx h3(Cx r) {
    if (std::abs(r) < 0.5) {
        Cx acc = 0.0, pw = 1.0;
        for (int n = 3; n < 90; ++n) {
            double coef = (n % 2 == 0) ? 1.0 : -1.0;
            Cx term = coef / (static_cast<double>(n) * (n - 1.0)) * pw;
            acc += term;
            if (std::abs(term) < 1e-18) break;
            pw *= r;
        }
        return acc;
    }
    return ((1.0 + r) * std::log(1.0 + r) - r - 0.5 * r * r) / (r * r * r);
}

}  // namespace

std::complex<double> kernel(const BasisMeasure& m, std::complex<double> v) {
    require_upper(v);
    if (m.is_point()) {
        double t = m.location();
        if (t == 0.0) return 0.0;
        return t / (1.0 + t * v);
    }
    double a = m.lower(), len = m.length();
    Cx u = 1.0 + a * v;          // never zero: Im(u) = a Im(v) >= 0 and u(a=0) = 1
    Cx r = len * v / u;          // 1 + r = (1+bv)/(1+av), off the branch cut
    Cx head = a / u;
    switch (m.kind()) {
        case MeasureKind::Uniform:
            return head - (len / (u * u)) * g2(r);
        case MeasureKind::LinearInc:
            return head + (2.0 * len / (u * u)) * g3(r);
        case MeasureKind::LinearDec:
            return head - (2.0 * len / (u * u)) * h3(r);
        default:
            return {};
    }
}

double first_moment(const BasisMeasure& m) {
    switch (m.kind()) {
        case MeasureKind::PointMass: return m.location();
        case MeasureKind::Uniform: return 0.5 * (m.lower() + m.upper());
        case MeasureKind::LinearInc: return (m.lower() + 2.0 * m.upper()) / 3.0;
        case MeasureKind::LinearDec: return (2.0 * m.lower() + m.upper()) / 3.0;
    }
    return 0.0;
}

KernelMatrix KernelMatrix::build(std::vector<std::complex<double>> v_values,
                                 std::vector<BasisMeasure> dictionary) {
    KernelMatrix km;
    km.v_values = std::move(v_values);
    km.dictionary = std::move(dictionary);
    km.entries.resize(km.rows() * km.cols());
    for (std::size_t j = 0; j < km.rows(); ++j)
        for (std::size_t k = 0; k < km.cols(); ++k)
            km.entries[j * km.cols() + k] = kernel(km.dictionary[k], km.v_values[j]);
    return km;
}

std::vector<std::complex<double>> mp_residual(std::span<const double> weights,
                                              const KernelMatrix& km,
                                              std::span<const GridPair> pairs, double c) {
    if (weights.size() != km.cols())
        throw std::invalid_argument("mp_residual: weight count must match dictionary size");
    if (pairs.size() != km.rows())
        throw std::invalid_argument("mp_residual: pair count must match kernel rows");
    std::vector<Cx> errs(pairs.size());
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        Cx mix = 0.0;
        for (std::size_t k = 0; k < km.cols(); ++k) mix += weights[k] * km.at(j, k);
        errs[j] = 1.0 / pairs[j].v + pairs[j].z - c * mix;
    }
    return errs;
}

}  // namespace specest
