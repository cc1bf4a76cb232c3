// SPDX-License-Identifier: Apache-2.0
#ifndef BELLMONO_LINPROG_HPP
#define BELLMONO_LINPROG_HPP

#include <vector>

#include "bellmono/rational.hpp"

namespace bellmono {

// max c.x subject to A x <= b, x >= 0, with b >= 0 so the slack basis is
// feasible. Solved in exact rational arithmetic; no tolerances anywhere.
struct LinearProgram {
    int num_vars = 0;
    std::vector<std::vector<Rational>> rows;  // each of length num_vars
    std::vector<Rational> rhs;                // b, entrywise >= 0
    std::vector<Rational> objective;          // c
};

struct LpSolution {
    bool unbounded = false;
    Rational value;
    std::vector<Rational> x;     // optimal point (num_vars entries)
    std::vector<Rational> dual;  // optimal dual multipliers, one per row
};

// Dense simplex with Bland's anti-cycling rule. The returned duals are exact
// optimality certificates: dual >= 0, A^T dual >= c, b.dual == c.x.
LpSolution solve_max_lp(const LinearProgram& lp);

}  // namespace bellmono

#endif
