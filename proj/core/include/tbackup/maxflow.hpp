#pragma once

#include <optional>
#include <vector>

#include "tbackup/biset.hpp"
#include "tbackup/edge_vector.hpp"
#include "tbackup/instance.hpp"

namespace tbackup {

/// Undirected edge of a flow network; an empty capacity means unbounded.
struct FlowEdge {
  int u = 0;
  int v = 0;
  std::optional<Rational> cap;
};

/// Undirected network. Nodes in `unit_nodes` carry capacity 1 unless they are
/// a source or a sink of the query, in which case they stay unsplit.
struct FlowNetwork {
  int num_nodes = 0;
  std::vector<FlowEdge> edges;
  NodeSet unit_nodes;

  explicit FlowNetwork(int n) : num_nodes(n), unit_nodes(static_cast<size_t>(n)) {}
};

/// Edges capacitated by x; in node mode every non-terminal gets unit capacity.
FlowNetwork connectivity_network(const Instance& inst, const EdgeVector& x);
/// Edges capacitated by u(e), unbounded where u is; node capacities as above.
FlowNetwork capacity_network(const Instance& inst);

struct MaxFlow {
  bool unbounded = false;
  Rational value;
  /// Net flow per network edge, positive in the u -> v direction.
  std::vector<Rational> edge_flow;
  /// Source-side-minimal minimum cut: X = nodes fully reachable in the
  /// residual graph, Gamma = split nodes whose entry side alone is reachable.
  Biset cut;
};

/// Shortest-augmenting-path max flow from `source` to `sink` over exact rationals.
MaxFlow max_flow(const FlowNetwork& net, const NodeSet& source, const NodeSet& sink);

/// Flow from t to T \ {t}.
MaxFlow terminal_flow(const Instance& inst, const FlowNetwork& net, int t);

/// Minimum cut around t as a biset in C(t). Throws Infeasible when the cut is
/// unbounded, which cannot happen for finite capacities.
Biset min_cut_biset(const Instance& inst, const FlowNetwork& net, int t);

/// Inclusion-minimal biset in C(t) whose inner part contains `seed` and whose
/// cut value x(delta) + |Gamma| equals r(t). Absent when the seed meets
/// another terminal or no such biset is tight.
std::optional<Biset> minimal_tight_biset(const Instance& inst, const FlowNetwork& net, int t,
                                         const NodeSet& seed);

struct FlowPath {
  std::vector<int> nodes;
  std::vector<int> edges;
  Rational value;
};

struct FlowDecomposition {
  std::vector<FlowPath> paths;
  /// Per-edge net flow after cancelling directed cycles; the paths carry exactly this load.
  std::vector<Rational> acyclic_flow;
};

/// Splits a half-integral flow into source-to-sink paths of value 1/2 each.
/// Throws std::invalid_argument when some load is not half-integral.
FlowDecomposition decompose_half_paths(const FlowNetwork& net, const MaxFlow& flow,
                                       const NodeSet& source, const NodeSet& sink);

/// Swaps path suffixes at shared interior nodes until a half-integral prefix
/// never continues on an integral edge while the other path continues on a
/// half-integral one. `x` gives the edge values. Returns false when the
/// iteration cap was reached.
bool normalize_stay_half(std::vector<FlowPath>& paths, const std::vector<Rational>& x,
                         int max_swaps = 10000);

/// True when no pair of paths violates the condition normalize_stay_half enforces.
bool satisfies_stay_half(const std::vector<FlowPath>& paths, const std::vector<Rational>& x);

}  // namespace tbackup
