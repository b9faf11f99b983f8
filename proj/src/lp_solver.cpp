#include "specest/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specest {

namespace {

constexpr double kPivotTol = 1e-9;

void check_row_width(const std::vector<std::vector<double>>& rows, std::size_t width,
                     const char* what) {
    for (const auto& row : rows) {
        if (row.size() != width) throw std::invalid_argument(std::string(what) + ": bad row width");
        for (double v : row)
            if (!std::isfinite(v)) throw std::invalid_argument("LP coefficients must be finite");
    }
}

// Dense simplex tableau. Row 0 holds reduced costs and -objective; data rows
// hold B^{-1}[A | b]. Column layout: structural (split) vars, slacks,
// artificials, rhs.
class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_((rows + 1) * (cols + 1), 0.0), basis_(rows, 0) {}

    double& at(std::size_t i, std::size_t j) { return data_[i * (cols_ + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return data_[i * (cols_ + 1) + j]; }
    double& rhs(std::size_t i) { return data_[i * (cols_ + 1) + cols_]; }
    double rhs(std::size_t i) const { return data_[i * (cols_ + 1) + cols_]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::vector<std::size_t>& basis() { return basis_; }

    void pivot(std::size_t row, std::size_t col) {
        const std::size_t stride = cols_ + 1;
        double* prow = &data_[row * stride];
        double inv = 1.0 / prow[col];
        for (std::size_t j = 0; j <= cols_; ++j) prow[j] *= inv;
        prow[col] = 1.0;
        for (std::size_t i = 0; i <= rows_; ++i) {
            if (i == row) continue;
            double* r = &data_[i * stride];
            double factor = r[col];
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j <= cols_; ++j) r[j] -= factor * prow[j];
            r[col] = 0.0;
        }
        basis_[row - 1] = col;
    }

private:
    std::size_t rows_, cols_;
    std::vector<double> data_;
    std::vector<std::size_t> basis_;  // basic column per data row (rows 1..rows_)
};

enum class PivotResult { Optimal, Unbounded, Step };

// One Bland step: entering = smallest eligible column, leaving = ratio test
// with ties broken by smallest basic column index.
PivotResult bland_step(Tableau& t, const std::vector<bool>& banned) {
    std::size_t enter = t.cols();
    for (std::size_t j = 0; j < t.cols(); ++j) {
        if (banned[j]) continue;
        if (t.at(0, j) < -kPivotTol) {
            enter = j;
            break;
        }
    }
    if (enter == t.cols()) return PivotResult::Optimal;

    // Exact min-ratio test; Bland tie-break on equal ratios by smallest
    // basic column index. No tolerance band here: accepting a ratio even
    // slightly above the minimum drives basic values negative and the error
    // compounds over thousands of pivots.
    std::size_t leave = 0;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= t.rows(); ++i) {
        double coef = t.at(i, enter);
        if (coef > kPivotTol) {
            double ratio = t.rhs(i) / coef;
            if (ratio < best_ratio ||
                (ratio == best_ratio && leave != 0 &&
                 t.basis()[i - 1] < t.basis()[leave - 1])) {
                best_ratio = ratio;
                leave = i;
            }
        }
    }
    if (leave == 0) return PivotResult::Unbounded;
    t.pivot(leave, enter);
    return PivotResult::Step;
}

}  // namespace

void LinearProgram::validate() const {
    std::size_t n = num_vars();
    if (n == 0) throw std::invalid_argument("LP needs at least one variable");
    for (double v : objective)
        if (!std::isfinite(v)) throw std::invalid_argument("LP objective must be finite");
    check_row_width(ineq_lhs, n, "inequality");
    check_row_width(eq_lhs, n, "equality");
    if (ineq_lhs.size() != ineq_rhs.size())
        throw std::invalid_argument("inequality rhs count mismatch");
    if (eq_lhs.size() != eq_rhs.size()) throw std::invalid_argument("equality rhs count mismatch");
    for (double v : ineq_rhs)
        if (!std::isfinite(v)) throw std::invalid_argument("LP rhs must be finite");
    for (double v : eq_rhs)
        if (!std::isfinite(v)) throw std::invalid_argument("LP rhs must be finite");
    if (!free_vars.empty() && free_vars.size() != n)
        throw std::invalid_argument("free_vars length mismatch");
}

const char* lp_status_name(LpStatus status) {
    switch (status) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterationLimit: return "iteration_limit";
    }
    return "?";
}

LpSolution solve(const LinearProgram& lp) {
    lp.validate();
    const std::size_t n_orig = lp.num_vars();
    const std::size_t m_ineq = lp.ineq_lhs.size();
    const std::size_t m = m_ineq + lp.eq_lhs.size();

    // Column layout after the free-variable split.
    std::vector<std::size_t> col_of(n_orig);      // first column of variable j
    std::vector<bool> is_free(n_orig, false);
    std::size_t n_struct = 0;
    for (std::size_t j = 0; j < n_orig; ++j) {
        is_free[j] = !lp.free_vars.empty() && lp.free_vars[j];
        col_of[j] = n_struct;
        n_struct += is_free[j] ? 2 : 1;
    }
    const std::size_t slack0 = n_struct;
    const std::size_t art0 = slack0 + m_ineq;
    const std::size_t n_cols = art0 + m;

    Tableau t(m, n_cols);
    double rhs_scale = 1.0;

    auto fill_row = [&](std::size_t row, const std::vector<double>& coeffs, double rhs_val,
                        bool inequality, std::size_t ineq_index) {
        double sign = rhs_val < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n_orig; ++j) {
            double v = sign * coeffs[j];
            t.at(row, col_of[j]) = v;
            if (is_free[j]) t.at(row, col_of[j] + 1) = -v;
        }
        if (inequality) t.at(row, slack0 + ineq_index) = sign;
        t.at(row, art0 + (row - 1)) = 1.0;
        t.rhs(row) = sign * rhs_val;
        rhs_scale = std::max(rhs_scale, std::abs(rhs_val));
    };

    for (std::size_t i = 0; i < m_ineq; ++i) fill_row(i + 1, lp.ineq_lhs[i], lp.ineq_rhs[i], true, i);
    for (std::size_t i = 0; i < lp.eq_lhs.size(); ++i)
        fill_row(m_ineq + i + 1, lp.eq_lhs[i], lp.eq_rhs[i], false, 0);

    for (std::size_t i = 0; i < m; ++i) t.basis()[i] = art0 + i;

    // Phase 1: minimize the artificial sum. With the artificial basis, the
    // reduced-cost row is the negated column sums and -w = -sum(rhs).
    for (std::size_t j = 0; j < n_cols; ++j) {
        if (j >= art0) continue;
        double colsum = 0.0;
        for (std::size_t i = 1; i <= m; ++i) colsum += t.at(i, j);
        t.at(0, j) = -colsum;
    }
    double rhs_sum = 0.0;
    for (std::size_t i = 1; i <= m; ++i) rhs_sum += t.rhs(i);
    t.rhs(0) = -rhs_sum;

    LpSolution sol;
    sol.tableau_rows = m;
    sol.tableau_cols = n_cols;
    const int max_iter = 50 * static_cast<int>(m + n_cols);
    std::vector<bool> banned(n_cols, false);

    int iter = 0;
    std::vector<char> art_in_basis(m, 1);
    while (true) {
        if (iter >= max_iter) {
            sol.status = LpStatus::IterationLimit;
            sol.iterations = iter;
            return sol;
        }
        PivotResult r = bland_step(t, banned);
        if (r == PivotResult::Optimal) break;
        if (r == PivotResult::Unbounded) {
            // Phase-1 objective is bounded below by 0; cannot happen.
            sol.status = LpStatus::Unbounded;
            sol.iterations = iter;
            return sol;
        }
        ++iter;
        // Artificials that left the basis are dropped for good.
        std::fill(art_in_basis.begin(), art_in_basis.end(), 0);
        for (std::size_t b : t.basis())
            if (b >= art0) art_in_basis[b - art0] = 1;
        for (std::size_t a = 0; a < m; ++a)
            if (!art_in_basis[a]) banned[art0 + a] = true;
    }

    double phase1_opt = -t.rhs(0);
    if (phase1_opt > kPivotTol * rhs_scale) {
        sol.status = LpStatus::Infeasible;
        sol.iterations = iter;
        return sol;
    }

    // Drive basic artificials out; rows that resist are redundant and the
    // artificial stays basic at value 0.
    for (std::size_t i = 1; i <= m; ++i) {
        if (t.basis()[i - 1] < art0) continue;
        std::size_t pivot_col = n_cols;
        for (std::size_t j = 0; j < art0; ++j) {
            if (std::abs(t.at(i, j)) > kPivotTol) {
                pivot_col = j;
                break;
            }
        }
        if (pivot_col < n_cols) {
            t.pivot(i, pivot_col);
            ++iter;
        }
    }
    for (std::size_t j = art0; j < n_cols; ++j) banned[j] = true;

    // Phase 2 objective row: reduced costs of the real objective under the
    // current basis.
    std::vector<double> cost(n_cols, 0.0);
    for (std::size_t j = 0; j < n_orig; ++j) {
        cost[col_of[j]] = lp.objective[j];
        if (is_free[j]) cost[col_of[j] + 1] = -lp.objective[j];
    }
    for (std::size_t j = 0; j <= n_cols; ++j) t.at(0, j) = 0.0;
    for (std::size_t j = 0; j < n_cols; ++j) t.at(0, j) = cost[j];
    t.rhs(0) = 0.0;
    for (std::size_t i = 1; i <= m; ++i) {
        double cb = cost[t.basis()[i - 1]];
        if (cb == 0.0) continue;
        for (std::size_t j = 0; j < n_cols; ++j) t.at(0, j) -= cb * t.at(i, j);
        t.rhs(0) -= cb * t.rhs(i);
    }

    while (true) {
        if (iter >= max_iter) {
            sol.status = LpStatus::IterationLimit;
            sol.iterations = iter;
            return sol;
        }
        PivotResult r = bland_step(t, banned);
        if (r == PivotResult::Optimal) break;
        if (r == PivotResult::Unbounded) {
            sol.status = LpStatus::Unbounded;
            sol.iterations = iter;
            return sol;
        }
        ++iter;
    }

    std::vector<double> full(n_cols, 0.0);
    for (std::size_t i = 1; i <= m; ++i) full[t.basis()[i - 1]] = t.rhs(i);
    sol.x.assign(n_orig, 0.0);
    for (std::size_t j = 0; j < n_orig; ++j) {
        sol.x[j] = full[col_of[j]];
        if (is_free[j]) sol.x[j] -= full[col_of[j] + 1];
    }
    sol.objective_value = 0.0;
    for (std::size_t j = 0; j < n_orig; ++j) sol.objective_value += lp.objective[j] * sol.x[j];
    sol.status = LpStatus::Optimal;
    sol.iterations = iter;
    return sol;
}

}  // namespace specest
