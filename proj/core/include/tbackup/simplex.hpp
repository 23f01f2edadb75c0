#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tbackup/rational.hpp"

namespace tbackup {

/// sum coeff * x >= rhs.
struct LpRow {
  std::vector<std::pair<int, Rational>> coeffs;
  Rational rhs;
};

/// minimize cost . x  subject to rows, lower <= x <= upper. Costs must be
/// non-negative; this keeps the all-slack basis of the dual feasible.
struct LpProblem {
  int num_vars = 0;
  std::vector<Rational> cost;
  std::vector<Rational> lower;
  std::vector<std::optional<Rational>> upper;
  std::vector<LpRow> rows;
};

struct LpSolution {
  bool feasible = false;
  Rational value;
  std::vector<Rational> x;
  /// One multiplier per row.
  std::vector<Rational> duals;
  int pivots = 0;
};

/// Exact primal simplex with Bland's rule, run on the dual. An unbounded dual
/// reports the primal infeasible.
LpSolution solve_exact_lp(const LpProblem& lp);

}  // namespace tbackup
