#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tbackup/biset.hpp"
#include "tbackup/edge_vector.hpp"
#include "tbackup/instance.hpp"

namespace tbackup {

struct LaminarEntry {
  Biset biset;
  int terminal = -1;
  /// h(B) - (floor + E1)(delta(B)), equal to x'(delta_F(B)) by tightness.
  int requirement = 0;
  std::optional<int> parent;
  /// Half edges crossing the biset, ascending.
  std::vector<int> half_boundary;
};

struct LaminarFamily {
  std::vector<LaminarEntry> entries;
  /// F: edges with x' = 1/2, ascending.
  std::vector<int> half_edges;
  /// Entries found by the exhaustive fallback rather than by seeds.
  int fallback_entries = 0;

  std::vector<int> of_terminal(int t) const;
  std::vector<int> children(int entry) const;
  bool is_maximal(int entry) const { return !entries[static_cast<size_t>(entry)].parent; }
  /// F+ and F- of an entry relative to its children.
  std::vector<int> f_plus(int entry) const;
  std::vector<int> f_minus(int entry) const;
};

/// Largest node count for which build_laminar may enumerate every C-biset.
inline constexpr int kLaminarFallbackNodes = 10;

/// Greedy maximal laminar family of tight bisets with independent half-edge
/// incidence vectors. Throws IncompleteFamily when fewer than |F| entries are found.
LaminarFamily build_laminar(const Instance& inst, const EdgeVector& floor_part,
                            const EdgeVector& half_part, bool allow_fallback = true);

/// Checks whether a set of 0/1 vectors over F (given as index lists) is
/// linearly independent, by exact elimination.
class IndependenceTracker {
 public:
  explicit IndependenceTracker(int dim) : dim_(dim) {}
  /// Adds `support` when independent of the stored rows; returns whether added.
  bool try_add(const std::vector<int>& support);
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  std::vector<Rational> reduce(std::vector<Rational> v) const;

  int dim_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<int> pivots_;
};

struct DegreeFourWitness {
  int node = -1;
  int outer_entry = -1;  // X
  int inner_entry = -1;  // W, inside X, node in X \ W+
  std::vector<int> outer_edges;
  std::vector<int> inner_edges;
  /// Number of qualifying (X, W) pairs; more than one is reported as ambiguous.
  int candidates = 0;
};

struct StructureReport {
  std::vector<int> half_degree;
  std::vector<DegreeFourWitness> witnesses;
};

/// Verifies the extreme-point structure of the family: two boundary changes
/// per entry, edges at maximal entries touching exactly two of them, all
/// F-values 1/2, half-degrees in {0,2,4}, and a nested witness at every
/// degree-4 node. Throws StructureViolation naming the failed clause.
StructureReport structure_check(const Instance& inst, const LaminarFamily& fam,
                                const EdgeVector& half_part);

}  // namespace tbackup
