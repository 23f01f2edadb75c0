#include "tbackup/pipeline.hpp"

#include <numeric>
#include <random>

#include "log.hpp"
#include "tbackup/errors.hpp"
#include "tbackup/generator.hpp"

namespace tbackup {

std::vector<int> fixing_order(int num_edges, std::uint64_t seed) {
  std::vector<int> order(static_cast<size_t>(num_edges));
  std::iota(order.begin(), order.end(), 0);
  if (seed == 0) return order;
  std::mt19937_64 rng(seed);
  for (int i = num_edges - 1; i > 0; --i) {
    auto j = static_cast<int>(uniform_draw(rng, 0, static_cast<std::uint64_t>(i)));
    std::swap(order[static_cast<size_t>(i)], order[static_cast<size_t>(j)]);
  }
  return order;
}

SolveResult solve(const Instance& inst, const SolveOptions& options) {
  SolveResult res;
  const auto original = inst.costs();
  res.costs = perturb_costs(inst);
  res.perturbed = res.costs != original;

  res.lp = solve_lp(inst, res.costs);
  res.lp_bound = res.perturbed ? solve_lp(inst, original).value : res.lp.value;
  TB_LOG_DEBUG("LP value {} ({} rounds, {} cuts), bound {}", to_string(res.lp.value), res.lp.rounds,
               res.lp.cuts, to_string(res.lp_bound));

  res.refinement = refine_to_extreme_point(inst, res.costs, res.lp.x, fixing_order(inst.num_edges(), options.seed));
  res.half_integral = res.refinement.floor_part + res.refinement.half_part;
  if (!res.half_integral.is_half_integral()) throw InternalError("refined optimum is not half-integral");
  if (res.half_integral.dot(res.costs) != res.lp.value) throw InternalError("refined optimum lost optimality");
  assert_minimal(inst, res.half_integral);
  if (auto v = fractional_degree_node(inst, res.half_integral)) {
    throw InternalError("node " + std::to_string(*v) + " has fractional degree in the half-integral optimum");
  }

  if (options.lp_only) {
    res.solution = res.half_integral;
  } else {
    res.family = build_laminar(inst, res.refinement.floor_part, res.refinement.half_part,
                               options.allow_laminar_fallback);
    res.rounding = round_solution(inst, res.refinement.floor_part, res.refinement.half_part, *res.family, original,
                                   options.rounding);
    res.solution = res.rounding->x;
  }
  res.cost = res.solution.dot(original);
  if (res.lp_bound == 0) {
    res.ratio = res.cost == 0 ? Rational(1) : Rational(0);
    if (res.cost != 0) throw InternalError("positive cost over a zero LP bound");
  } else {
    res.ratio = res.cost / res.lp_bound;
  }
  return res;
}

}  // namespace tbackup
