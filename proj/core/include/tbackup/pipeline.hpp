#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tbackup/edge_vector.hpp"
#include "tbackup/instance.hpp"
#include "tbackup/laminar.hpp"
#include "tbackup/lp.hpp"
#include "tbackup/rounding.hpp"

namespace tbackup {

struct SolveOptions {
  /// Stop after the half-integral optimum.
  bool lp_only = false;
  /// 0 fixes variables in ascending edge order; otherwise the order is a
  /// permutation drawn from this seed.
  std::uint64_t seed = 0;
  bool allow_laminar_fallback = true;
  RoundingPolicy rounding = RoundingPolicy::CheapestFeasible;
};

struct SolveResult {
  std::vector<Rational> costs;  // possibly perturbed
  bool perturbed = false;
  LpOutcome lp;                 // under `costs`
  Rational lp_bound;            // LP optimum under the original costs
  Refinement refinement;
  EdgeVector half_integral;     // floor + half part
  std::optional<LaminarFamily> family;
  std::optional<RoundingResult> rounding;
  EdgeVector solution;          // rounded, or half_integral when lp_only
  Rational cost;                // original costs
  Rational ratio;               // cost / lp_bound (1 when both are 0)
};

/// Variable-fixing order for a seed; ascending ids for seed 0.
std::vector<int> fixing_order(int num_edges, std::uint64_t seed);

/// Perturb, solve the LP, refine to a half-integral extreme point, build the
/// laminar family and round. Throws Infeasible or an InternalError subclass.
SolveResult solve(const Instance& inst, const SolveOptions& options = {});

}  // namespace tbackup
