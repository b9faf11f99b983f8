#pragma once

#include <cstddef>
#include <vector>

namespace specest {

// General-form LP:
//   minimize  c . x
//   s.t.      G x <= h,  A x = b,
//             x_j >= 0 unless free_vars[j] (free variables are split
//             internally as x = x+ - x-).
struct LinearProgram {
    std::vector<double> objective;
    std::vector<std::vector<double>> ineq_lhs;
    std::vector<double> ineq_rhs;
    std::vector<std::vector<double>> eq_lhs;
    std::vector<double> eq_rhs;
    std::vector<bool> free_vars;  // empty means all variables >= 0

    std::size_t num_vars() const { return objective.size(); }
    void validate() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

const char* lp_status_name(LpStatus status);

struct LpSolution {
    LpStatus status = LpStatus::IterationLimit;
    std::vector<double> x;
    double objective_value = 0.0;
    // Debug counters (tableau dimensions and simplex iterations).
    int iterations = 0;
    std::size_t tableau_rows = 0;
    std::size_t tableau_cols = 0;
};

// Two-phase primal simplex on the slack-augmented standard form. Bland's
// rule throughout (deterministic, anti-cycling); pivot tolerance 1e-9;
// iteration cap 50 * (rows + cols).
LpSolution solve(const LinearProgram& lp);

}  // namespace specest
