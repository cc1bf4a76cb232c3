// SPDX-License-Identifier: Apache-2.0
#include "bellmono/linprog.hpp"

#include "bellmono/errors.hpp"

namespace bellmono {

LpSolution solve_max_lp(const LinearProgram& lp) {
    const int n = lp.num_vars;
    const int m = static_cast<int>(lp.rows.size());
    if (n < 1) throw domain_error("linear program needs at least one variable");
    if (lp.rhs.size() != static_cast<size_t>(m)) throw domain_error("rhs size mismatch");
    if (lp.objective.size() != static_cast<size_t>(n)) throw domain_error("objective size mismatch");
    for (const auto& row : lp.rows)
        if (row.size() != static_cast<size_t>(n)) throw domain_error("row size mismatch");
    for (const auto& b : lp.rhs)
        if (b < 0) throw domain_error("rhs must be nonnegative (slack basis must be feasible)");

    // Tableau: columns 0..n-1 structural, n..n+m-1 slack, last column rhs.
    // Bottom row holds z_j - c_j; pivoting keeps basic columns unit.
    const int cols = n + m + 1;
    std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(cols, Rational(0)));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) t[i][j] = lp.rows[i][j];
        t[i][n + i] = 1;
        t[i][cols - 1] = lp.rhs[i];
    }
    for (int j = 0; j < n; ++j) t[m][j] = -lp.objective[j];

    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) basis[i] = n + i;

    LpSolution sol;
    const long long pivot_cap = 200000;
    for (long long pivots = 0;; ++pivots) {
        if (pivots > pivot_cap) throw internal_error("simplex exceeded its pivot cap");
        // Bland: entering column = lowest index with negative reduced cost.
        int enter = -1;
        for (int j = 0; j < n + m; ++j)
            if (t[m][j] < 0) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        // Leaving row: minimum ratio, ties broken by lowest basis index.
        int leave = -1;
        Rational best;
        for (int i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            const Rational ratio = t[i][cols - 1] / t[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) {
            sol.unbounded = true;
            return sol;
        }
        const Rational piv = t[leave][enter];
        for (int j = 0; j < cols; ++j) t[leave][j] /= piv;
        for (int i = 0; i <= m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            const Rational f = t[i][enter];
            for (int j = 0; j < cols; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }

    sol.value = t[m][cols - 1];
    sol.x.assign(n, Rational(0));
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) sol.x[basis[i]] = t[i][cols - 1];
    sol.dual.assign(m, Rational(0));
    for (int i = 0; i < m; ++i) sol.dual[i] = t[m][n + i];

    // The tableau is self-certifying; re-check the certificates anyway so a
    // pivoting bug can never leak a wrong optimum.
    Rational primal_obj(0);
    for (int j = 0; j < n; ++j) primal_obj += lp.objective[j] * sol.x[j];
    Rational dual_obj(0);
    for (int i = 0; i < m; ++i) {
        if (sol.dual[i] < 0) throw internal_error("simplex produced a negative dual");
        dual_obj += lp.rhs[i] * sol.dual[i];
    }
    if (primal_obj != sol.value || dual_obj != sol.value)
        throw internal_error("simplex optimality certificate failed");
    for (int i = 0; i < m; ++i) {
        Rational lhs(0);
        for (int j = 0; j < n; ++j) lhs += lp.rows[i][j] * sol.x[j];
        if (lhs > lp.rhs[i]) throw internal_error("simplex returned an infeasible point");
    }
    for (int j = 0; j < n; ++j) {
        if (sol.x[j] < 0) throw internal_error("simplex returned a negative variable");
        Rational reduced(0);
        for (int i = 0; i < m; ++i) reduced += lp.rows[i][j] * sol.dual[i];
        if (reduced < lp.objective[j]) throw internal_error("simplex left a dual constraint violated");
    }
    return sol;
}

}  // namespace bellmono
