#include "specest/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <stdexcept>

#include "specest/errors.hpp"
#include "specest/io_util.hpp"

namespace specest {

SymMatrix::SymMatrix(int dim) : dim_(dim) {
    if (dim < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    data_.assign(static_cast<std::size_t>(dim) * dim, 0.0);
}

SymMatrix SymMatrix::from_rows(std::vector<double> rowmajor, int dim) {
    if (dim < 1) throw std::invalid_argument("matrix dimension must be >= 1");
    if (rowmajor.size() != static_cast<std::size_t>(dim) * dim)
        throw std::invalid_argument("matrix storage size mismatch");
    double max_abs = 0.0;
    for (double v : rowmajor) {
        if (!std::isfinite(v)) throw std::invalid_argument("matrix entries must be finite");
        max_abs = std::max(max_abs, std::abs(v));
    }
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            double d = std::abs(rowmajor[static_cast<std::size_t>(i) * dim + j] -
                                rowmajor[static_cast<std::size_t>(j) * dim + i]);
            if (d > 1e-12 * std::max(1e-300, max_abs))
                throw std::invalid_argument("matrix is not symmetric");
        }
    SymMatrix m(dim);
    m.data_ = std::move(rowmajor);
    return m;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += at(i, i);
    return t;
}

double SymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

namespace {

double off_diagonal_norm(const SymMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += a.at(i, j) * a.at(i, j);
    return std::sqrt(s);
}

}  // namespace

EigenDecomposition sym_eigs(const SymMatrix& input) {
    const int p = input.dim();
    SymMatrix a = input;
    std::vector<double> q(static_cast<std::size_t>(p) * p, 0.0);
    for (int i = 0; i < p; ++i) q[static_cast<std::size_t>(i) * p + i] = 1.0;

    const double norm = a.frobenius_norm();
    const double target = 1e-12 * std::max(norm, 1e-300);
    constexpr int kMaxSweeps = 100;

    int sweep = 0;
    while (off_diagonal_norm(a) > target) {
        if (sweep++ >= kMaxSweeps)
            throw IterationLimitError("Jacobi eigensolver did not converge in 100 sweeps");
        for (int k = 0; k < p - 1; ++k) {
            for (int l = k + 1; l < p; ++l) {
                double akl = a.at(k, l);
                if (akl == 0.0) continue;
                double akk = a.at(k, k), all = a.at(l, l);
                // Rotation angle zeroing a_kl (Rutishauser formulation).
                double theta = (all - akk) / (2.0 * akl);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;

                for (int i = 0; i < p; ++i) {
                    double aik = a.at(i, k), ail = a.at(i, l);
                    a.at(i, k) = c * aik - s * ail;
                    a.at(i, l) = s * aik + c * ail;
                }
                for (int i = 0; i < p; ++i) {
                    double aki = a.at(k, i), ali = a.at(l, i);
                    a.at(k, i) = c * aki - s * ali;
                    a.at(l, i) = s * aki + c * ali;
                }
                a.at(k, l) = 0.0;
                a.at(l, k) = 0.0;
                for (int i = 0; i < p; ++i) {
                    double qik = q[static_cast<std::size_t>(i) * p + k];
                    double qil = q[static_cast<std::size_t>(i) * p + l];
                    q[static_cast<std::size_t>(i) * p + k] = c * qik - s * qil;
                    q[static_cast<std::size_t>(i) * p + l] = s * qik + c * qil;
                }
            }
        }
    }

    std::vector<int> order(static_cast<std::size_t>(p));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return a.at(i, i) > a.at(j, j); });

    EigenDecomposition dec;
    dec.dim = p;
    dec.eigenvalues.resize(static_cast<std::size_t>(p));
    dec.vectors.assign(static_cast<std::size_t>(p) * p, 0.0);
    for (int j = 0; j < p; ++j) {
        dec.eigenvalues[static_cast<std::size_t>(j)] = a.at(order[j], order[j]);
        for (int i = 0; i < p; ++i)
            dec.vectors[static_cast<std::size_t>(i) * p + j] =
                q[static_cast<std::size_t>(i) * p + order[j]];
    }
    return dec;
}

SymMatrix sym_sqrt(const SymMatrix& a) {
    EigenDecomposition dec = sym_eigs(a);
    const int p = a.dim();
    const double norm = a.frobenius_norm();
    std::vector<double> roots(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) {
        double lambda = dec.eigenvalues[static_cast<std::size_t>(i)];
        if (lambda < -1e-10 * std::max(norm, 1e-300))
            throw NotPsdError("matrix has eigenvalue " + fmt_double(lambda) +
                              ", below the PSD tolerance");
        roots[static_cast<std::size_t>(i)] = std::sqrt(std::max(0.0, lambda));
    }
    SymMatrix result(p);
    for (int i = 0; i < p; ++i) {
        for (int j = i; j < p; ++j) {
            double s = 0.0;
            for (int k = 0; k < p; ++k)
                s += dec.vec(i, k) * roots[static_cast<std::size_t>(k)] * dec.vec(j, k);
            result.at(i, j) = s;
            result.at(j, i) = s;
        }
    }
    return result;
}

EmpiricalSpectrum scm_eigenvalues(const DataMatrix& x, bool centered) {
    const int n = x.rows, p = x.cols;
    if (n < 1 || p < 1) throw std::invalid_argument("data matrix must be nonempty");
    if (centered && n < 2) throw std::invalid_argument("centered covariance needs n >= 2");

    std::vector<double> mean(static_cast<std::size_t>(p), 0.0);
    if (centered) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < p; ++j) mean[static_cast<std::size_t>(j)] += x.at(i, j);
        for (double& v : mean) v /= static_cast<double>(n);
    }
    double denom = centered ? static_cast<double>(n - 1) : static_cast<double>(n);

    SymMatrix s(p);
    for (int j = 0; j < p; ++j) {
        for (int k = j; k < p; ++k) {
            double acc = 0.0;
            for (int i = 0; i < n; ++i)
                acc += (x.at(i, j) - mean[static_cast<std::size_t>(j)]) *
                       (x.at(i, k) - mean[static_cast<std::size_t>(k)]);
            s.at(j, k) = acc / denom;
            s.at(k, j) = s.at(j, k);
        }
    }

    EigenDecomposition dec = sym_eigs(s);
    for (double& l : dec.eigenvalues)
        if (l < 0.0) l = 0.0;  // roundoff from the PSD Gram form
    return EmpiricalSpectrum(std::move(dec.eigenvalues), n);
}

DataMatrix read_data_csv(std::istream& in) {
    DataMatrix m;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        size_t begin = line.find_first_not_of(" \t");
        if (begin == std::string::npos) continue;
        if (line[begin] == '#') continue;
        auto cells = split_csv_line(line);
        if (m.cols == 0) m.cols = static_cast<int>(cells.size());
        if (static_cast<int>(cells.size()) != m.cols)
            throw std::invalid_argument("ragged CSV row: expected " + std::to_string(m.cols) +
                                        " columns, got " + std::to_string(cells.size()));
        for (const auto& cell : cells) m.values.push_back(parse_double(cell));
        ++m.rows;
    }
    return m;
}

}  // namespace specest
