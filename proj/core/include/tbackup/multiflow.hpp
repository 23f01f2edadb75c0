#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tbackup/edge_vector.hpp"
#include "tbackup/instance.hpp"

namespace tbackup {

/// An edge of the split graph. The provenance walk runs in G from u to v.
struct SplitEdge {
  int u = 0;
  int v = 0;
  std::vector<int> walk_nodes;
  std::vector<int> walk_edges;
};

/// Multigraph J holding 2k x(e) parallel copies of each edge, with
/// requirements 2k r(t). Cut condition: every terminal keeps 2k r(t)
/// edge-disjoint paths to the other terminals.
struct SplitGraph {
  int num_nodes = 0;
  int scale = 1;  // 2k
  std::vector<int> requirement;  // scaled, zero off T
  std::vector<int> terminals;
  std::vector<SplitEdge> edges;

  /// Throws std::invalid_argument when 2k x is not integral.
  static SplitGraph from_vector(const Instance& inst, const EdgeVector& x, int k = 1);
  std::vector<int> incident(int v) const;
  bool is_terminal(int v) const { return requirement[static_cast<size_t>(v)] > 0; }
};

/// True when every terminal still has its scaled requirement of edge-disjoint
/// paths to the other terminals.
bool satisfies_cut_condition(const SplitGraph& j);

struct SplitChoice {
  enum class Kind { Pair, Removable };
  Kind kind = Kind::Pair;
  int first = -1;   // edge index in J
  int second = -1;  // unused for Removable
};

/// Lexicographically first admissible pair at v (pairs whose other ends
/// coincide are skipped), else the first edge whose removal keeps the cut
/// condition, else nothing.
std::optional<SplitChoice> find_admissible_pair(const SplitGraph& j, int v);

/// Replaces edges a = (w,v) and b = (v,z) by (w,z) with the concatenated walk.
void split_pair(SplitGraph& j, int v, int a, int b);

struct SplitStats {
  int splits = 0;
  int removals = 0;
  /// Cut-condition evaluations that confirmed the graph after a split or removal.
  int verified_states = 0;
  std::vector<int> node_order;
};

/// Splits off every non-terminal. Removals are allowed only when
/// `allow_removal`; otherwise a removable edge raises NotMinimal naming the
/// first G-edge of its walk.
SplitStats split_to_terminals(SplitGraph& j, bool allow_removal = false);

struct MultiflowPath {
  std::vector<int> nodes;
  std::vector<int> edges;
  Rational value;
};

struct Multiflow {
  std::vector<MultiflowPath> paths;
};

struct MultiflowResult {
  Multiflow flow;
  SplitStats stats;
};

/// Half-integral multiflow whose edge loads are exactly x. Edge connectivity
/// requirements are used whatever the instance mode. Node-mode optima may
/// need edge removals; pass allow_removal and compare loads afterwards.
MultiflowResult extract_multiflow(const Instance& inst, const EdgeVector& x, bool allow_removal = false);

struct MultiflowReport {
  bool ok = true;
  std::vector<std::string> violations;
  Rational cost;
  bool half_integral = true;
  bool integral = true;
  std::vector<Rational> load;
  std::vector<Rational> served;  // per node, flow on paths ending there
};

MultiflowReport verify_multiflow(const Instance& inst, const Multiflow& flow);

/// Removes closed sub-walks so the node sequence is simple.
void excise_loops(std::vector<int>& nodes, std::vector<int>& edges);

}  // namespace tbackup
