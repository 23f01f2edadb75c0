#include "tbackup/maxflow.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "tbackup/errors.hpp"

namespace tbackup {

namespace {

struct Arc {
  int to;
  int rev;
  bool inf;
  Rational cap;
  Rational flow;
  int edge;     // network edge id, -1 for internal arcs
  bool forward; // direction u -> v of the network edge
};

class Residual {
 public:
  explicit Residual(int n) : adj_(static_cast<size_t>(n)) {}

  void add(int from, int to, const std::optional<Rational>& cap, int edge = -1, bool fwd = true) {
    auto& a = adj_[static_cast<size_t>(from)];
    auto& b = adj_[static_cast<size_t>(to)];
    a.push_back(Arc{to, static_cast<int>(b.size()), !cap.has_value(), cap.value_or(0), 0, edge, fwd});
    b.push_back(Arc{from, static_cast<int>(a.size()) - 1, false, 0, 0, -1, true});
  }

  static bool open(const Arc& a) { return a.inf || a.flow < a.cap; }

  // Returns false when an augmenting path of unbounded capacity exists.
  bool run(int s, int t, Rational& value) {
    value = 0;
    const size_t n = adj_.size();
    for (;;) {
      std::vector<std::pair<int, int>> pred(n, {-1, -1});
      std::vector<char> seen(n, 0);
      std::deque<int> queue{s};
      seen[static_cast<size_t>(s)] = 1;
      while (!queue.empty() && !seen[static_cast<size_t>(t)]) {
        int v = queue.front();
        queue.pop_front();
        auto& arcs = adj_[static_cast<size_t>(v)];
        for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
          const Arc& a = arcs[static_cast<size_t>(i)];
          if (seen[static_cast<size_t>(a.to)] || !open(a)) continue;
          seen[static_cast<size_t>(a.to)] = 1;
          pred[static_cast<size_t>(a.to)] = {v, i};
          queue.push_back(a.to);
        }
      }
      if (!seen[static_cast<size_t>(t)]) return true;
      std::optional<Rational> bottleneck;
      for (int v = t; v != s;) {
        auto [u, i] = pred[static_cast<size_t>(v)];
        const Arc& a = adj_[static_cast<size_t>(u)][static_cast<size_t>(i)];
        if (!a.inf) {
          Rational room = a.cap - a.flow;
          if (!bottleneck || room < *bottleneck) bottleneck = room;
        }
        v = u;
      }
      if (!bottleneck) return false;
      for (int v = t; v != s;) {
        auto [u, i] = pred[static_cast<size_t>(v)];
        Arc& a = adj_[static_cast<size_t>(u)][static_cast<size_t>(i)];
        a.flow += *bottleneck;
        Arc& r = adj_[static_cast<size_t>(v)][static_cast<size_t>(a.rev)];
        r.flow -= *bottleneck;
        v = u;
      }
      value += *bottleneck;
    }
  }

  std::vector<char> reachable(int s) const {
    std::vector<char> seen(adj_.size(), 0);
    std::deque<int> queue{s};
    seen[static_cast<size_t>(s)] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (const Arc& a : adj_[static_cast<size_t>(v)]) {
        if (!seen[static_cast<size_t>(a.to)] && open(a)) {
          seen[static_cast<size_t>(a.to)] = 1;
          queue.push_back(a.to);
        }
      }
    }
    return seen;
  }

  const std::vector<std::vector<Arc>>& arcs() const { return adj_; }

 private:
  std::vector<std::vector<Arc>> adj_;
};

}  // namespace

FlowNetwork connectivity_network(const Instance& inst, const EdgeVector& x) {
  FlowNetwork net(inst.num_nodes());
  for (const auto& e : inst.edges()) net.edges.push_back(FlowEdge{e.u, e.v, x[e.id]});
  if (inst.mode() == Mode::Node) {
    for (int v = 0; v < inst.num_nodes(); ++v) {
      if (!inst.is_terminal(v)) net.unit_nodes.set(static_cast<size_t>(v));
    }
  }
  return net;
}

FlowNetwork capacity_network(const Instance& inst) {
  EdgeVector dummy(inst.num_edges());
  FlowNetwork net = connectivity_network(inst, dummy);
  for (const auto& e : inst.edges()) {
    auto& fe = net.edges[static_cast<size_t>(e.id)];
    if (e.capacity.is_unbounded()) {
      fe.cap.reset();
    } else {
      fe.cap = Rational(static_cast<long>(e.capacity.value()));
    }
  }
  return net;
}

MaxFlow max_flow(const FlowNetwork& net, const NodeSet& source, const NodeSet& sink) {
  const int n = net.num_nodes;
  if (source.intersects(sink)) throw std::invalid_argument("source and sink overlap");
  // Node v enters at v and leaves at n + v; unsplit nodes use an unbounded link.
  auto in = [](int v) { return v; };
  auto out = [n](int v) { return n + v; };
  const int s = 2 * n;
  const int t = 2 * n + 1;
  Residual res(2 * n + 2);
  for (int v = 0; v < n; ++v) {
    auto i = static_cast<size_t>(v);
    bool split = net.unit_nodes.test(i) && !source.test(i) && !sink.test(i);
    res.add(in(v), out(v), split ? std::optional<Rational>(1) : std::nullopt);
    if (source.test(i)) res.add(s, in(v), std::nullopt);
    if (sink.test(i)) res.add(out(v), t, std::nullopt);
  }
  for (int id = 0; id < static_cast<int>(net.edges.size()); ++id) {
    const auto& e = net.edges[static_cast<size_t>(id)];
    res.add(out(e.u), in(e.v), e.cap, id, true);
    res.add(out(e.v), in(e.u), e.cap, id, false);
  }

  MaxFlow result{false, 0, std::vector<Rational>(net.edges.size(), Rational(0)),
                 Biset(NodeSet(static_cast<size_t>(n)), NodeSet(static_cast<size_t>(n)))};
  if (!res.run(s, t, result.value)) {
    result.unbounded = true;
    return result;
  }
  for (const auto& arcs : res.arcs()) {
    for (const Arc& a : arcs) {
      if (a.edge < 0) continue;
      auto& f = result.edge_flow[static_cast<size_t>(a.edge)];
      if (a.forward) {
        f += a.flow;
      } else {
        f -= a.flow;
      }
    }
  }
  auto seen = res.reachable(s);
  NodeSet inner(static_cast<size_t>(n));
  NodeSet outer(static_cast<size_t>(n));
  for (int v = 0; v < n; ++v) {
    if (seen[static_cast<size_t>(in(v))]) outer.set(static_cast<size_t>(v));
    if (seen[static_cast<size_t>(in(v))] && seen[static_cast<size_t>(out(v))]) {
      inner.set(static_cast<size_t>(v));
    }
  }
  result.cut = Biset(inner, outer);
  return result;
}

MaxFlow terminal_flow(const Instance& inst, const FlowNetwork& net, int t) {
  NodeSet source(static_cast<size_t>(inst.num_nodes()));
  NodeSet sink(static_cast<size_t>(inst.num_nodes()));
  source.set(static_cast<size_t>(t));
  for (int w : inst.terminals()) {
    if (w != t) sink.set(static_cast<size_t>(w));
  }
  return max_flow(net, source, sink);
}

Biset min_cut_biset(const Instance& inst, const FlowNetwork& net, int t) {
  MaxFlow f = terminal_flow(inst, net, t);
  if (f.unbounded) {
    throw Infeasible("terminal " + std::to_string(t) + " has no finite cut");
  }
  return f.cut;
}

std::optional<Biset> minimal_tight_biset(const Instance& inst, const FlowNetwork& net, int t,
                                         const NodeSet& seed) {
  NodeSet source = seed;
  source.set(static_cast<size_t>(t));
  NodeSet sink(static_cast<size_t>(inst.num_nodes()));
  for (int w : inst.terminals()) {
    if (w == t) continue;
    if (source.test(static_cast<size_t>(w))) return std::nullopt;
    sink.set(static_cast<size_t>(w));
  }
  MaxFlow f = max_flow(net, source, sink);
  if (f.unbounded || f.value != inst.requirement(t)) return std::nullopt;
  return f.cut;
}

namespace {

// Directed multigraph in half units, used by the path decomposition.
struct HalfArc {
  int to;
  int edge;  // -1 for super arcs
  long units;
};

bool cancel_one_cycle(std::vector<std::vector<HalfArc>>& g) {
  const size_t n = g.size();
  std::vector<int> color(n, 0);
  std::vector<std::pair<int, int>> stack;  // (node, arc index into g[node])
  for (size_t root = 0; root < n; ++root) {
    if (color[root]) continue;
    std::vector<std::pair<int, size_t>> dfs{{static_cast<int>(root), 0}};
    std::vector<int> via;  // arc index used to reach dfs[k+1] from dfs[k]
    color[root] = 1;
    while (!dfs.empty()) {
      auto& [v, next] = dfs.back();
      auto& arcs = g[static_cast<size_t>(v)];
      if (next == arcs.size()) {
        color[static_cast<size_t>(v)] = 2;
        dfs.pop_back();
        if (!via.empty()) via.pop_back();
        continue;
      }
      size_t idx = next++;
      const HalfArc& a = arcs[idx];
      if (a.units == 0) continue;
      auto w = static_cast<size_t>(a.to);
      if (color[w] == 0) {
        color[w] = 1;
        via.push_back(static_cast<int>(idx));
        dfs.push_back({a.to, 0});
        continue;
      }
      if (color[w] != 1) continue;
      // Cycle: from w along the dfs stack back to v, then the arc v -> w.
      size_t start = 0;
      while (dfs[start].first != a.to) ++start;
      std::vector<HalfArc*> cycle;
      for (size_t k = start; k + 1 < dfs.size(); ++k) {
        cycle.push_back(&g[static_cast<size_t>(dfs[k].first)][static_cast<size_t>(via[k])]);
      }
      cycle.push_back(&g[static_cast<size_t>(v)][idx]);
      long m = cycle.front()->units;
      for (auto* c : cycle) m = std::min(m, c->units);
      for (auto* c : cycle) c->units -= m;
      return true;
    }
  }
  return false;
}

long half_units(const Rational& q) {
  Rational twice = q * 2;
  if (!is_integer(twice)) throw std::invalid_argument("flow load is not half-integral");
  return twice.get_num().get_si();
}

}  // namespace

FlowDecomposition decompose_half_paths(const FlowNetwork& net, const MaxFlow& flow,
                                       const NodeSet& source, const NodeSet& sink) {
  const int n = net.num_nodes;
  const int s = n;
  const int t = n + 1;
  std::vector<std::vector<HalfArc>> g(static_cast<size_t>(n + 2));
  std::vector<long> excess(static_cast<size_t>(n), 0);
  for (int id = 0; id < static_cast<int>(net.edges.size()); ++id) {
    const auto& e = net.edges[static_cast<size_t>(id)];
    long units = half_units(flow.edge_flow[static_cast<size_t>(id)]);
    if (units > 0) {
      g[static_cast<size_t>(e.u)].push_back({e.v, id, units});
    } else if (units < 0) {
      g[static_cast<size_t>(e.v)].push_back({e.u, id, -units});
    }
    excess[static_cast<size_t>(e.u)] -= units;
    excess[static_cast<size_t>(e.v)] += units;
  }
  for (int v = 0; v < n; ++v) {
    long ex = excess[static_cast<size_t>(v)];
    if (ex < 0) {
      if (!source.test(static_cast<size_t>(v))) throw std::invalid_argument("flow not conserved");
      g[static_cast<size_t>(s)].push_back({v, -1, -ex});
    } else if (ex > 0) {
      if (!sink.test(static_cast<size_t>(v))) throw std::invalid_argument("flow not conserved");
      g[static_cast<size_t>(v)].push_back({t, -1, ex});
    }
  }
  while (cancel_one_cycle(g)) {
  }

  FlowDecomposition out;
  out.acyclic_flow.assign(net.edges.size(), Rational(0));
  for (const auto& arcs : g) {
    for (const auto& a : arcs) {
      if (a.edge < 0 || a.units == 0) continue;
      Rational load(a.units, 2);
      load.canonicalize();
      const auto& e = net.edges[static_cast<size_t>(a.edge)];
      bool forward = a.to == e.v;
      out.acyclic_flow[static_cast<size_t>(a.edge)] += forward ? load : Rational(-load);
    }
  }
  for (;;) {
    FlowPath path;
    path.value = Rational(1, 2);
    int v = s;
    while (v != t) {
      auto& arcs = g[static_cast<size_t>(v)];
      auto it = std::find_if(arcs.begin(), arcs.end(), [](const HalfArc& a) { return a.units > 0; });
      if (it == arcs.end()) break;
      --it->units;
      if (it->edge >= 0) path.edges.push_back(it->edge);
      if (it->to != t) path.nodes.push_back(it->to);
      v = it->to;
    }
    if (v == s) break;
    if (v != t) throw InternalError("path decomposition stalled");
    out.paths.push_back(std::move(path));
  }
  return out;
}

namespace {

struct StayHalfViolation {
  size_t i, j, pi, pj;
};

std::optional<StayHalfViolation> find_violation(const std::vector<FlowPath>& paths,
                                                const std::vector<Rational>& x) {
  auto half = [&](int e) { return !is_integer(x[static_cast<size_t>(e)]); };
  for (size_t i = 0; i < paths.size(); ++i) {
    for (size_t j = 0; j < paths.size(); ++j) {
      if (i == j) continue;
      const auto& a = paths[i];
      const auto& b = paths[j];
      for (size_t pi = 1; pi + 1 < a.nodes.size(); ++pi) {
        for (size_t pj = 1; pj + 1 < b.nodes.size(); ++pj) {
          if (a.nodes[pi] != b.nodes[pj]) continue;
          int ei = a.edges[pi - 1], ei2 = a.edges[pi];
          int ej = b.edges[pj - 1], ej2 = b.edges[pj];
          if (half(ei) && !half(ej) && half(ei2) != half(ej2) && half(ej2)) {
            return StayHalfViolation{i, j, pi, pj};
          }
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

bool satisfies_stay_half(const std::vector<FlowPath>& paths, const std::vector<Rational>& x) {
  return !find_violation(paths, x).has_value();
}

bool normalize_stay_half(std::vector<FlowPath>& paths, const std::vector<Rational>& x,
                         int max_swaps) {
  for (int round = 0; round < max_swaps; ++round) {
    auto bad = find_violation(paths, x);
    if (!bad) return true;
    auto& a = paths[bad->i];
    auto& b = paths[bad->j];
    std::vector<int> a_nodes(a.nodes.begin(), a.nodes.begin() + static_cast<long>(bad->pi));
    std::vector<int> b_nodes(b.nodes.begin(), b.nodes.begin() + static_cast<long>(bad->pj));
    std::vector<int> a_edges(a.edges.begin(), a.edges.begin() + static_cast<long>(bad->pi));
    std::vector<int> b_edges(b.edges.begin(), b.edges.begin() + static_cast<long>(bad->pj));
    a_nodes.insert(a_nodes.end(), b.nodes.begin() + static_cast<long>(bad->pj), b.nodes.end());
    b_nodes.insert(b_nodes.end(), a.nodes.begin() + static_cast<long>(bad->pi), a.nodes.end());
    a_edges.insert(a_edges.end(), b.edges.begin() + static_cast<long>(bad->pj), b.edges.end());
    b_edges.insert(b_edges.end(), a.edges.begin() + static_cast<long>(bad->pi), a.edges.end());
    a.nodes = std::move(a_nodes);
    a.edges = std::move(a_edges);
    b.nodes = std::move(b_nodes);
    b.edges = std::move(b_edges);
  }
  return satisfies_stay_half(paths, x);
}

}  // namespace tbackup
