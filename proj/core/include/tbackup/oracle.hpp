#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tbackup/edge_vector.hpp"
#include "tbackup/instance.hpp"

namespace tbackup {

struct VerificationReport {
  bool feasible = true;
  /// Max-flow value from each terminal to the others, indexed like terminals().
  std::vector<Rational> connectivity;
  Rational cost;
  std::vector<std::string> diagnostics;
};

/// Checks an integer multiplicity vector: integrality, capacities, and each
/// terminal's connectivity by max flow (unit node capacities in node mode).
VerificationReport verify_solution(const Instance& inst, const EdgeVector& y);

struct BruteForceOptions {
  /// Per-edge search cap is min(u(e), max_requirement + cap_slack).
  int cap_slack = 0;
  std::uint64_t node_limit = 5'000'000;
  int max_edges = 24;
};

struct BruteForceResult {
  Rational cost;
  EdgeVector y;
  std::uint64_t nodes = 0;
};

/// Exact integer optimum by depth-first branch and bound. Throws TooLarge
/// when the instance or the search exceeds the configured bounds, and
/// Infeasible when no integer solution exists.
BruteForceResult brute_force_optimum(const Instance& inst, const BruteForceOptions& opt = {});

struct ExhaustiveLp {
  Rational value;
  EdgeVector x;
  int constraints = 0;
};

/// LP optimum with every C-biset constraint written out. Throws TooLarge
/// above `max_nodes` nodes and Infeasible when some constraint has no edges.
ExhaustiveLp exhaustive_lp_check(const Instance& inst, int max_nodes = 7);

/// Whether integer path values meet every requirement within the given
/// capacities (u, or `unit_capacity` to use 1 everywhere). Simple T-paths are
/// enumerated; throws TooLarge above `max_paths`.
bool integral_multiflow_exists(const Instance& inst, bool unit_capacity = false, int max_paths = 40);

}  // namespace tbackup
