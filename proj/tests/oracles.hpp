// Test-only oracles, independent of the implementation paths they check:
//   - adaptive quadrature (Simpson with Richardson correction) for complex
//     integrands, real and imaginary parts controlled separately;
//   - exhaustive vertex enumeration for small LPs;
//   - a brute-force Levy distance for point-mass mixtures.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <utility>
#include <vector>

#include "specest/lp_solver.hpp"

namespace oracles {

using Cx = std::complex<double>;

namespace detail {

inline Cx simpson_rec(const std::function<Cx(double)>& f, double a, double b, Cx fa, Cx fb,
                      Cx fm, Cx whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    Cx flm = f(lm), frm = f(rm);
    Cx left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    Cx right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    Cx err = left + right - whole;
    if (depth > 48 ||
        (std::abs(err.real()) < 15.0 * tol && std::abs(err.imag()) < 15.0 * tol))
        return left + right + err / 15.0;
    return simpson_rec(f, a, m, fa, fm, flm, left, tol / 2.0, depth + 1) +
           simpson_rec(f, m, b, fm, fb, frm, right, tol / 2.0, depth + 1);
}

}  // namespace detail

// Adaptive quadrature of a complex-valued integrand on [a, b]; absolute
// tolerance per component.
inline Cx integrate(const std::function<Cx(double)>& f, double a, double b,
                    double tol = 1e-12) {
    if (!(b > a)) return 0.0;
    Cx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    Cx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_rec(f, a, b, fa, fb, fm, whole, tol / 15.0, 0);
}

inline double integrate_real(const std::function<double(double)>& f, double a, double b,
                             double tol = 1e-12) {
    return integrate([&](double x) { return Cx(f(x), 0.0); }, a, b, tol).real();
}

// --- exhaustive vertex enumeration -----------------------------------------

namespace detail {

// Solves M x = rhs by Gaussian elimination with partial pivoting.
// Returns false when M is (numerically) singular.
inline bool solve_square(std::vector<std::vector<double>> m, std::vector<double> rhs,
                         std::vector<double>& x) {
    const std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
        if (std::abs(m[piv][col]) < 1e-11) return false;
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            double factor = m[r][col] / m[col][col];
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < n; ++c) m[r][c] -= factor * m[col][c];
            rhs[r] -= factor * rhs[col];
        }
    }
    x.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
    return true;
}

}  // namespace detail

// Minimum objective over all vertices of {G x <= h, A x = b, x >= 0}.
// Suitable for LPs known to be feasible and bounded; returns +inf when no
// feasible vertex exists. Nonnegative variables only.
inline double vertex_enumeration_optimum(const specest::LinearProgram& lp) {
    const std::size_t n = lp.num_vars();
    const std::size_t n_eq = lp.eq_lhs.size();

    // Candidate active rows: inequality rows then the bounds x_i >= 0.
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    for (std::size_t i = 0; i < lp.ineq_lhs.size(); ++i) {
        rows.push_back(lp.ineq_lhs[i]);
        rhs.push_back(lp.ineq_rhs[i]);
    }
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> bound(n, 0.0);
        bound[j] = -1.0;
        rows.push_back(std::move(bound));
        rhs.push_back(0.0);
    }

    const std::size_t pick = n > n_eq ? n - n_eq : 0;
    std::vector<std::size_t> idx(pick);
    double best = std::numeric_limits<double>::infinity();

    std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t start,
                                                                std::size_t depth) {
        if (depth == pick) {
            std::vector<std::vector<double>> m;
            std::vector<double> r;
            for (std::size_t e = 0; e < n_eq; ++e) {
                m.push_back(lp.eq_lhs[e]);
                r.push_back(lp.eq_rhs[e]);
            }
            for (std::size_t k = 0; k < pick; ++k) {
                m.push_back(rows[idx[k]]);
                r.push_back(rhs[idx[k]]);
            }
            std::vector<double> x;
            if (!detail::solve_square(std::move(m), std::move(r), x)) return;
            for (std::size_t j = 0; j < n; ++j)
                if (x[j] < -1e-8) return;
            for (std::size_t i = 0; i < lp.ineq_lhs.size(); ++i) {
                double lhs = 0.0;
                for (std::size_t j = 0; j < n; ++j) lhs += lp.ineq_lhs[i][j] * x[j];
                if (lhs > lp.ineq_rhs[i] + 1e-8) return;
            }
            double obj = 0.0;
            for (std::size_t j = 0; j < n; ++j) obj += lp.objective[j] * x[j];
            best = std::min(best, obj);
            return;
        }
        for (std::size_t i = start; i < rows.size(); ++i) {
            idx[depth] = i;
            recurse(i + 1, depth + 1);
        }
    };
    recurse(0, 0);
    return best;
}

// --- brute-force Levy distance for point-mass mixtures ----------------------

// Independent of the library's CDF machinery: step CDFs by direct summation,
// feasibility scanned on a dense grid around every atom.
inline double brute_levy(const std::vector<std::pair<double, double>>& f_atoms,
                         const std::vector<std::pair<double, double>>& g_atoms) {
    auto cdf = [](const std::vector<std::pair<double, double>>& atoms, double x) {
        double s = 0.0;
        for (auto [t, w] : atoms)
            if (t <= x) s += w;
        return s;
    };
    std::vector<double> xs;
    for (auto [t, w] : f_atoms) xs.push_back(t);
    for (auto [t, w] : g_atoms) xs.push_back(t);
    double lo = *std::min_element(xs.begin(), xs.end());
    double hi = *std::max_element(xs.begin(), xs.end());

    auto feasible = [&](double eps) {
        const double step = 1e-5;
        for (double x = lo - eps - 10 * step; x <= hi + eps + 10 * step; x += step) {
            double gx = cdf(g_atoms, x);
            if (cdf(f_atoms, x - eps) - eps > gx + 1e-12) return false;
            if (gx > cdf(f_atoms, x + eps) + eps + 1e-12) return false;
        }
        return true;
    };
    if (feasible(0.0)) return 0.0;
    double a = 0.0, b = 1.0;
    while (b - a > 1e-6) {
        double mid = 0.5 * (a + b);
        if (feasible(mid))
            b = mid;
        else
            a = mid;
    }
    return b;
}

}  // namespace oracles
