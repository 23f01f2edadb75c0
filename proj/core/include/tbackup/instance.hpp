#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tbackup/rational.hpp"

namespace tbackup {

enum class Mode { Edge, Node };

const char* to_string(Mode mode);

/// Edge capacity: a non-negative integer or the Unbounded tag. Never a sentinel.
class Capacity {
 public:
  static Capacity unbounded() { return Capacity(); }
  static Capacity finite(std::int64_t value);

  bool is_unbounded() const { return !value_.has_value(); }
  std::int64_t value() const { return *value_; }

  /// True when `x` does not exceed this capacity.
  bool admits(const Rational& x) const;

  /// Finite value, or `fallback` when unbounded.
  std::int64_t value_or(std::int64_t fallback) const {
    return value_.value_or(fallback);
  }

  friend bool operator==(const Capacity&, const Capacity&) = default;

 private:
  Capacity() = default;
  explicit Capacity(std::int64_t v) : value_(v) {}

  std::optional<std::int64_t> value_;
};

struct Edge {
  int id = 0;
  int u = 0;
  int v = 0;
  Rational cost;
  Capacity capacity = Capacity::unbounded();

  int other(int w) const { return w == u ? v : u; }
  bool touches(int w) const { return u == w || v == w; }
};

struct EdgeSpec {
  int u = 0;
  int v = 0;
  Rational cost;
  Capacity capacity = Capacity::unbounded();
};

/// Undirected multigraph with terminals and requirements. Immutable after
/// construction. Node ids are 0..num_nodes-1, edge ids follow input order.
class Instance {
 public:
  /// Throws InvalidInstance when an invariant is violated.
  Instance(int num_nodes, const std::vector<EdgeSpec>& edges,
           const std::vector<std::pair<int, int>>& requirements, Mode mode);

  int num_nodes() const { return num_nodes_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[static_cast<size_t>(id)]; }

  /// Sorted ascending.
  const std::vector<int>& terminals() const { return terminals_; }
  bool is_terminal(int v) const { return requirement_[static_cast<size_t>(v)] > 0; }
  /// r(t) for terminals, 0 elsewhere.
  int requirement(int v) const { return requirement_[static_cast<size_t>(v)]; }
  int max_requirement() const { return max_requirement_; }

  Mode mode() const { return mode_; }
  Instance with_mode(Mode mode) const;

  /// Ids of edges incident to `v`.
  const std::vector<int>& incident(int v) const { return incident_[static_cast<size_t>(v)]; }

  std::vector<Rational> costs() const;

 private:
  int num_nodes_;
  std::vector<Edge> edges_;
  std::vector<int> terminals_;
  std::vector<int> requirement_;
  int max_requirement_ = 0;
  Mode mode_;
  std::vector<std::vector<int>> incident_;
};

}  // namespace tbackup
