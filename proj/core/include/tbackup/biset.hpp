#pragma once

#include <boost/dynamic_bitset.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tbackup/edge_vector.hpp"
#include "tbackup/instance.hpp"

namespace tbackup {

using NodeSet = boost::dynamic_bitset<>;

NodeSet make_node_set(int n, std::initializer_list<int> members = {});
std::vector<int> members(const NodeSet& s);
std::string format_node_set(const NodeSet& s);

/// (X, X+) with X a subset of X+. Gamma = X+ \ X is computed on request.
class Biset {
 public:
  Biset(NodeSet inner, NodeSet outer);
  static Biset of(int n, std::initializer_list<int> inner, std::initializer_list<int> outer);
  static Biset singleton(int n, int v);

  const NodeSet& inner() const { return inner_; }
  const NodeSet& outer() const { return outer_; }
  NodeSet gamma() const { return outer_ - inner_; }
  int universe() const { return static_cast<int>(inner_.size()); }
  bool empty() const { return inner_.none(); }

  /// Componentwise inclusion.
  bool subset_of(const Biset& other) const;

  friend bool operator==(const Biset&, const Biset&) = default;
  /// Order by inner size, then inner bits, then outer bits. Deterministic.
  friend bool operator<(const Biset& a, const Biset& b);

 private:
  NodeSet inner_;
  NodeSet outer_;
};

std::string format_biset(const Biset& b);

Biset biset_cap(const Biset& a, const Biset& b);
Biset biset_cup(const Biset& a, const Biset& b);
/// (X \ Y+, X+ \ Y).
Biset biset_minus(const Biset& a, const Biset& b);

enum class PairKind { Nested, StronglyDisjoint, Crossing };
PairKind classify_pair(const Biset& a, const Biset& b);

/// True when an edge goes from X to V \ X+.
bool crosses(const Edge& e, const Biset& b);
std::vector<int> boundary_edges(const Instance& inst, const Biset& b);
/// x(delta(b)).
Rational boundary(const EdgeVector& x, const Biset& b, const std::vector<Edge>& edges);

/// The terminal t with X∩T = X+∩T = {t}, if any.
std::optional<int> owner_terminal(const Instance& inst, const Biset& b);

/// Requirement of the biset under the instance mode: r(t) - |Gamma| (node) or
/// r(t) with empty Gamma (edge) on C(t), zero elsewhere. May be negative in
/// node mode; callers clamp when needed.
int h_value(const Instance& inst, const Biset& b);

/// Calls `visit` for every biset in C(t) over all terminals t, with Gamma
/// restricted to non-terminals adjacent to X (edge mode: Gamma empty). Stops
/// early when `visit` returns false.
void for_each_c_biset(const Instance& inst, const std::function<bool(const Biset&)>& visit);

}  // namespace tbackup
