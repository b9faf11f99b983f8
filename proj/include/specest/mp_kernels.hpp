#pragma once

#include <complex>
#include <span>
#include <vector>

#include "specest/basis_measure.hpp"
#include "specest/grid_builder.hpp"

namespace specest {

// MP integral kernel K(M, v) = integral lambda dM(lambda) / (1 + lambda v),
// in closed form for every dictionary kind. Requires Im v > 0.
//   PointMass(t):  t / (1 + t v)
//   Uniform(a,b):  1/v - (log(1+bv) - log(1+av)) / (v^2 (b-a))
// plus the linear-density analogues. The implementation evaluates all three
// interval kinds through a cancellation-free rearrangement (stable down to
// Im v = 1e-3 and short intervals); the test suite gates them against an
// adaptive quadrature oracle.
std::complex<double> kernel(const BasisMeasure& m, std::complex<double> v);

// First moment of a basis measure: integral lambda dM(lambda).
double first_moment(const BasisMeasure& m);

// J x K matrix A[j][k] = K(M_k, v_j).
struct KernelMatrix {
    std::vector<std::complex<double>> entries;  // row-major
    std::vector<std::complex<double>> v_values;
    std::vector<BasisMeasure> dictionary;

    std::size_t rows() const { return v_values.size(); }
    std::size_t cols() const { return dictionary.size(); }
    std::complex<double> at(std::size_t j, std::size_t k) const {
        return entries[j * cols() + k];
    }

    static KernelMatrix build(std::vector<std::complex<double>> v_values,
                              std::vector<BasisMeasure> dictionary);
};

// Per-pair MP residuals for a candidate weight vector:
//   e_j = 1/v_j + z_j - c * sum_k w_k A[j][k].
std::vector<std::complex<double>> mp_residual(std::span<const double> weights,
                                              const KernelMatrix& km,
                                              std::span<const GridPair> pairs, double c);

}  // namespace specest
