#pragma once

#include <iosfwd>
#include <vector>

#include "specest/empirical_spectrum.hpp"

namespace specest {

// Dense real symmetric matrix, row-major storage.
class SymMatrix {
public:
    explicit SymMatrix(int dim);
    // Validates |A_ij - A_ji| <= 1e-12 * max|A|.
    static SymMatrix from_rows(std::vector<double> rowmajor, int dim);

    int dim() const { return dim_; }
    double at(int i, int j) const { return data_[static_cast<std::size_t>(i) * dim_ + j]; }
    double& at(int i, int j) { return data_[static_cast<std::size_t>(i) * dim_ + j]; }
    const std::vector<double>& data() const { return data_; }

    double trace() const;
    double frobenius_norm() const;

private:
    int dim_;
    std::vector<double> data_;
};

struct EigenDecomposition {
    std::vector<double> eigenvalues;  // descending
    std::vector<double> vectors;      // row-major p x p; column j pairs with eigenvalue j
    int dim = 0;

    double vec(int i, int j) const { return vectors[static_cast<std::size_t>(i) * dim + j]; }
};

// Cyclic Jacobi rotations until the off-diagonal Frobenius norm falls below
// 1e-12 * ||A||_F; throws IterationLimitError after 100 sweeps.
EigenDecomposition sym_eigs(const SymMatrix& a);

// Q Lambda^{1/2} Q^T. Eigenvalues in [-1e-10*||A||_F, 0) are clamped to 0;
// anything lower throws NotPsdError.
SymMatrix sym_sqrt(const SymMatrix& a);

// Row-major n x p data matrix (one observation per row).
struct DataMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * cols + j]; }
    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * cols + j]; }
};

// Eigenvalues of the sample covariance estimator: X^T X / n by default, or
// the centered (X - Xbar)^T (X - Xbar) / (n-1) variant. Centering needs
// n >= 2. Tiny negative eigenvalues are clamped to 0.
EmpiricalSpectrum scm_eigenvalues(const DataMatrix& x, bool centered = false);

// CSV ingestion: one observation row per line, p comma-separated columns.
DataMatrix read_data_csv(std::istream& in);

}  // namespace specest
