#pragma once

#include <cstddef>
#include <vector>

#include "fbl/rational.hpp"

namespace fbl {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational value;               // objective at the optimum
  std::vector<Rational> x;      // primal solution
  std::vector<Rational> duals;  // one multiplier per row, >= 0 at optimum
};

/// Exact dense two-phase tableau simplex with Bland's rule.
///
/// Solves   max c.x   s.t.  A x <= b,  x >= 0.
/// Rows with negative b get an artificial variable in phase one. At an optimal
/// basis the duals y satisfy y >= 0, y A >= c and y.b == value exactly.
LpResult solve_lp(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                  const std::vector<Rational>& c);

}  // namespace fbl
