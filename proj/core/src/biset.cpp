#include "tbackup/biset.hpp"

#include <stdexcept>

namespace tbackup {

NodeSet make_node_set(int n, std::initializer_list<int> members) {
  NodeSet s(static_cast<size_t>(n));
  for (int v : members) s.set(static_cast<size_t>(v));
  return s;
}

std::vector<int> members(const NodeSet& s) {
  std::vector<int> out;
  for (auto i = s.find_first(); i != NodeSet::npos; i = s.find_next(i)) {
    out.push_back(static_cast<int>(i));
  }
  return out;
}

std::string format_node_set(const NodeSet& s) {
  std::string out = "{";
  bool first = true;
  for (int v : members(s)) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

Biset::Biset(NodeSet inner, NodeSet outer) : inner_(std::move(inner)), outer_(std::move(outer)) {
  if (inner_.size() != outer_.size()) throw std::invalid_argument("biset parts differ in size");
  if (!inner_.is_subset_of(outer_)) throw std::invalid_argument("inner part not inside outer part");
}

Biset Biset::of(int n, std::initializer_list<int> inner, std::initializer_list<int> outer) {
  NodeSet in = make_node_set(n, inner);
  NodeSet out = make_node_set(n, outer);
  out |= in;
  return Biset(in, out);
}

Biset Biset::singleton(int n, int v) { return of(n, {v}, {v}); }

bool Biset::subset_of(const Biset& other) const {
  return inner_.is_subset_of(other.inner_) && outer_.is_subset_of(other.outer_);
}

bool operator<(const Biset& a, const Biset& b) {
  auto ca = a.inner_.count();
  auto cb = b.inner_.count();
  if (ca != cb) return ca < cb;
  // dynamic_bitset compares lexicographically from the highest bit; compare
  // member lists instead so smaller node ids sort first.
  auto ma = members(a.inner_);
  auto mb = members(b.inner_);
  if (ma != mb) return ma < mb;
  return members(a.outer_) < members(b.outer_);
}

std::string format_biset(const Biset& b) {
  return "(" + format_node_set(b.inner()) + "," + format_node_set(b.outer()) + ")";
}

Biset biset_cap(const Biset& a, const Biset& b) {
  return Biset(a.inner() & b.inner(), a.outer() & b.outer());
}

Biset biset_cup(const Biset& a, const Biset& b) {
  return Biset(a.inner() | b.inner(), a.outer() | b.outer());
}

Biset biset_minus(const Biset& a, const Biset& b) {
  return Biset(a.inner() - b.outer(), a.outer() - b.inner());
}

PairKind classify_pair(const Biset& a, const Biset& b) {
  if (!a.inner().intersects(b.outer()) && !a.outer().intersects(b.inner())) {
    return PairKind::StronglyDisjoint;
  }
  if (a.subset_of(b) || b.subset_of(a)) return PairKind::Nested;
  return PairKind::Crossing;
}

bool crosses(const Edge& e, const Biset& b) {
  auto u = static_cast<size_t>(e.u);
  auto v = static_cast<size_t>(e.v);
  return (b.inner().test(u) && !b.outer().test(v)) || (b.inner().test(v) && !b.outer().test(u));
}

std::vector<int> boundary_edges(const Instance& inst, const Biset& b) {
  std::vector<int> out;
  for (const auto& e : inst.edges()) {
    if (crosses(e, b)) out.push_back(e.id);
  }
  return out;
}

Rational boundary(const EdgeVector& x, const Biset& b, const std::vector<Edge>& edges) {
  Rational sum = 0;
  for (const auto& e : edges) {
    if (crosses(e, b)) sum += x[e.id];
  }
  return sum;
}

std::optional<int> owner_terminal(const Instance& inst, const Biset& b) {
  std::optional<int> found;
  for (int t : inst.terminals()) {
    auto i = static_cast<size_t>(t);
    bool in = b.inner().test(i);
    bool out = b.outer().test(i);
    if (in != out) return std::nullopt;
    if (in) {
      if (found) return std::nullopt;
      found = t;
    }
  }
  return found;
}

int h_value(const Instance& inst, const Biset& b) {
  if (b.empty()) return 0;
  auto t = owner_terminal(inst, b);
  if (!t) return 0;
  auto gamma = static_cast<int>(b.gamma().count());
  if (inst.mode() == Mode::Edge) return gamma == 0 ? inst.requirement(*t) : 0;
  return inst.requirement(*t) - gamma;
}

namespace {

// Enumerates subsets of `pool` (given as a member list) as bitsets.
template <typename F>
bool for_each_subset(const std::vector<int>& pool, int n, F&& f) {
  if (pool.size() >= 30) throw std::length_error("subset enumeration too large");
  const unsigned long total = 1UL << pool.size();
  for (unsigned long mask = 0; mask < total; ++mask) {
    NodeSet s(static_cast<size_t>(n));
    for (size_t i = 0; i < pool.size(); ++i) {
      if (mask & (1UL << i)) s.set(static_cast<size_t>(pool[i]));
    }
    if (!f(s)) return false;
  }
  return true;
}

}  // namespace

void for_each_c_biset(const Instance& inst, const std::function<bool(const Biset&)>& visit) {
  const int n = inst.num_nodes();
  std::vector<int> free_nodes;
  for (int v = 0; v < n; ++v) {
    if (!inst.is_terminal(v)) free_nodes.push_back(v);
  }
  for (int t : inst.terminals()) {
    bool go = for_each_subset(free_nodes, n, [&](const NodeSet& extra) {
      NodeSet inner = extra;
      inner.set(static_cast<size_t>(t));
      if (inst.mode() == Mode::Edge) return visit(Biset(inner, inner));
      std::vector<int> nbrs;
      for (int v : free_nodes) {
        if (inner.test(static_cast<size_t>(v))) continue;
        for (int e : inst.incident(v)) {
          if (inner.test(static_cast<size_t>(inst.edge(e).other(v)))) {
            nbrs.push_back(v);
            break;
          }
        }
      }
      return for_each_subset(nbrs, n, [&](const NodeSet& gamma) {
        return visit(Biset(inner, inner | gamma));
      });
    });
    if (!go) return;
  }
}

}  // namespace tbackup
