#pragma once

#include <optional>
#include <vector>

#include "tbackup/biset.hpp"
#include "tbackup/edge_vector.hpp"
#include "tbackup/instance.hpp"
#include "tbackup/simplex.hpp"

namespace tbackup {

/// Every zero cost becomes 1/(theta |E|), theta the largest cost denominator.
std::vector<Rational> perturb_costs(const Instance& inst);

/// First terminal whose cut condition fails for x, with its min-cut biset.
struct Violation {
  int terminal;
  Biset biset;
  Rational flow;
};
std::optional<Violation> find_violation(const Instance& inst, const EdgeVector& x);
bool is_feasible(const Instance& inst, const EdgeVector& x);

/// Throws Infeasible when even u itself violates some cut.
void check_capacity_feasible(const Instance& inst);

/// Cutting-plane LP  min c.x  s.t.  x(delta(B)) >= h(B) - base(delta(B)),
/// lower <= x <= upper. With base = 0 and upper = u this is LP(h,u); with
/// base = floor(x*) it is the residual LP. Separation runs one max flow per
/// terminal on capacities base + x.
class CutLp {
 public:
  CutLp(const Instance& inst, std::vector<Rational> costs, EdgeVector base,
        std::vector<std::optional<Rational>> upper);

  void pin(int e, const Rational& value);
  void unpin(int e);

  struct Result {
    EdgeVector x;
    Rational value;
  };
  /// Empty when infeasible under the current pins.
  std::optional<Result> solve();

  const std::vector<Biset>& pool() const { return pool_; }
  int rounds() const { return rounds_; }
  int lp_solves() const { return lp_solves_; }

 private:
  bool add_cut(const Biset& b);

  const Instance& inst_;
  std::vector<Rational> costs_;
  EdgeVector base_;
  std::vector<Rational> lower_;
  std::vector<std::optional<Rational>> upper_;
  std::vector<std::optional<Rational>> default_upper_;
  std::vector<Biset> pool_;
  int rounds_ = 0;
  int lp_solves_ = 0;
};

struct LpOutcome {
  EdgeVector x;
  Rational value;
  int rounds = 0;
  int cuts = 0;
};

/// Optimum of LP(h,u) for the given costs. Throws Infeasible.
LpOutcome solve_lp(const Instance& inst, const std::vector<Rational>& costs);

struct Refinement {
  EdgeVector floor_part;  // integer part of x*
  EdgeVector half_part;   // extreme point of the residual LP, entries in {0, 1/2, 1}
  Rational residual_value;
  /// Edge order used for fixing.
  std::vector<int> order;
};

/// Residual upper bound min(1, u(e) - floor(x*(e))).
std::vector<std::optional<Rational>> residual_bounds(const Instance& inst, const EdgeVector& floor_part);

/// Sequential fixing: try 0, then 1, else 1/2, in `order` (ascending ids when
/// empty). Throws InternalError if a 1/2 pin moves the optimum.
Refinement refine_to_extreme_point(const Instance& inst, const std::vector<Rational>& costs,
                                   const EdgeVector& x_star, std::vector<int> order = {});

/// Throws NotMinimal(e) when x(e) can drop by 1/2 without leaving P(h,u).
void assert_minimal(const Instance& inst, const EdgeVector& x);

/// Node whose x-degree is fractional, if any.
std::optional<int> fractional_degree_node(const Instance& inst, const EdgeVector& x);

}  // namespace tbackup
