#include "tbackup/multiflow.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "log.hpp"
#include "tbackup/errors.hpp"
#include "tbackup/maxflow.hpp"

namespace tbackup {

SplitGraph SplitGraph::from_vector(const Instance& inst, const EdgeVector& x, int k) {
  SplitGraph j;
  j.num_nodes = inst.num_nodes();
  j.scale = 2 * k;
  j.requirement.assign(static_cast<size_t>(inst.num_nodes()), 0);
  for (int t : inst.terminals()) j.requirement[static_cast<size_t>(t)] = j.scale * inst.requirement(t);
  j.terminals = inst.terminals();
  for (const auto& e : inst.edges()) {
    Rational copies = x[e.id] * j.scale;
    if (!is_integer(copies) || copies < 0) {
      throw std::invalid_argument("edge " + std::to_string(e.id) + " value is not 1/" +
                                  std::to_string(j.scale) + "-integral");
    }
    for (long c = 0; c < copies.get_num().get_si(); ++c) {
      j.edges.push_back(SplitEdge{e.u, e.v, {e.u, e.v}, {e.id}});
    }
  }
  return j;
}

std::vector<int> SplitGraph::incident(int v) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    const auto& e = edges[static_cast<size_t>(i)];
    if (e.u == v || e.v == v) out.push_back(i);
  }
  return out;
}

namespace {

using Ends = std::vector<std::pair<int, int>>;

Ends ends_of(const SplitGraph& j) {
  Ends out;
  for (const auto& e : j.edges) out.emplace_back(e.u, e.v);
  return out;
}

bool cut_condition(const SplitGraph& j, const Ends& ends) {
  std::map<std::pair<int, int>, long> mult;
  for (auto [u, v] : ends) {
    if (u == v) continue;
    ++mult[{std::min(u, v), std::max(u, v)}];
  }
  FlowNetwork net(j.num_nodes);
  for (const auto& [uv, c] : mult) net.edges.push_back(FlowEdge{uv.first, uv.second, Rational(c)});
  for (int t : j.terminals) {
    NodeSet source(static_cast<size_t>(j.num_nodes));
    NodeSet sink(static_cast<size_t>(j.num_nodes));
    source.set(static_cast<size_t>(t));
    for (int w : j.terminals) {
      if (w != t) sink.set(static_cast<size_t>(w));
    }
    if (max_flow(net, source, sink).value < j.requirement[static_cast<size_t>(t)]) return false;
  }
  return true;
}

int far_end(const SplitEdge& e, int v) { return e.u == v ? e.v : e.u; }

}  // namespace

bool satisfies_cut_condition(const SplitGraph& j) { return cut_condition(j, ends_of(j)); }

std::optional<SplitChoice> find_admissible_pair(const SplitGraph& j, int v) {
  auto inc = j.incident(v);
  Ends base = ends_of(j);
  for (size_t x = 0; x < inc.size(); ++x) {
    for (size_t y = x + 1; y < inc.size(); ++y) {
      int a = inc[x];
      int b = inc[y];
      int w = far_end(j.edges[static_cast<size_t>(a)], v);
      int z = far_end(j.edges[static_cast<size_t>(b)], v);
      if (w == z) continue;
      Ends trial = base;
      trial[static_cast<size_t>(a)] = {w, z};
      trial[static_cast<size_t>(b)] = {v, v};
      if (cut_condition(j, trial)) return SplitChoice{SplitChoice::Kind::Pair, a, b};
    }
  }
  for (int a : inc) {
    Ends trial = base;
    trial[static_cast<size_t>(a)] = {v, v};
    if (cut_condition(j, trial)) return SplitChoice{SplitChoice::Kind::Removable, a, -1};
  }
  return std::nullopt;
}

void split_pair(SplitGraph& j, int v, int a, int b) {
  SplitEdge ea = j.edges[static_cast<size_t>(a)];
  SplitEdge eb = j.edges[static_cast<size_t>(b)];
  if (ea.v != v) {
    std::reverse(ea.walk_nodes.begin(), ea.walk_nodes.end());
    std::reverse(ea.walk_edges.begin(), ea.walk_edges.end());
    std::swap(ea.u, ea.v);
  }
  if (eb.u != v) {
    std::reverse(eb.walk_nodes.begin(), eb.walk_nodes.end());
    std::reverse(eb.walk_edges.begin(), eb.walk_edges.end());
    std::swap(eb.u, eb.v);
  }
  if (ea.v != v || eb.u != v) throw std::invalid_argument("split pair does not meet at the node");
  SplitEdge merged{ea.u, eb.v, ea.walk_nodes, ea.walk_edges};
  merged.walk_nodes.insert(merged.walk_nodes.end(), eb.walk_nodes.begin() + 1, eb.walk_nodes.end());
  merged.walk_edges.insert(merged.walk_edges.end(), eb.walk_edges.begin(), eb.walk_edges.end());
  j.edges.erase(j.edges.begin() + std::max(a, b));
  j.edges.erase(j.edges.begin() + std::min(a, b));
  j.edges.push_back(std::move(merged));
}

SplitStats split_to_terminals(SplitGraph& j, bool allow_removal) {
  SplitStats stats;
  std::vector<std::pair<int, int>> order;  // (-degree, node)
  for (int v = 0; v < j.num_nodes; ++v) {
    if (j.is_terminal(v)) continue;
    auto d = static_cast<int>(j.incident(v).size());
    if (d % 2 != 0) throw OddDegree(v);
    if (d > 0) order.emplace_back(-d, v);
  }
  std::sort(order.begin(), order.end());
  for (auto [neg, v] : order) {
    stats.node_order.push_back(v);
    for (;;) {
      auto inc = j.incident(v);
      if (inc.empty()) break;
      if (inc.size() == 3) throw OddDegree(v);
      auto choice = find_admissible_pair(j, v);
      if (!choice) throw NoAdmissiblePair(v);
      if (choice->kind == SplitChoice::Kind::Pair) {
        split_pair(j, v, choice->first, choice->second);
        ++stats.splits;
      } else {
        const auto& dead = j.edges[static_cast<size_t>(choice->first)];
        if (!allow_removal) throw NotMinimal(dead.walk_edges.front());
        TB_LOG_WARN("removing a copy of walk through edge {} at node {}", dead.walk_edges.front(), v);
        j.edges.erase(j.edges.begin() + choice->first);
        ++stats.removals;
      }
      ++stats.verified_states;
    }
  }
  for (const auto& e : j.edges) {
    if (!j.is_terminal(e.u) || !j.is_terminal(e.v) || e.u == e.v) {
      throw InternalError("split graph still has an edge off the terminals");
    }
  }
  return stats;
}

void excise_loops(std::vector<int>& nodes, std::vector<int>& edges) {
  if (nodes.empty()) return;
  std::vector<int> out_nodes{nodes.front()};
  std::vector<int> out_edges;
  for (size_t i = 1; i < nodes.size(); ++i) {
    auto seen = std::find(out_nodes.begin(), out_nodes.end(), nodes[i]);
    if (seen != out_nodes.end()) {
      auto keep = static_cast<size_t>(seen - out_nodes.begin());
      out_nodes.resize(keep + 1);
      out_edges.resize(keep);
      continue;
    }
    out_edges.push_back(edges[i - 1]);
    out_nodes.push_back(nodes[i]);
  }
  nodes = std::move(out_nodes);
  edges = std::move(out_edges);
}

MultiflowResult extract_multiflow(const Instance& inst, const EdgeVector& x, bool allow_removal) {
  MultiflowResult res;
  SplitGraph j = SplitGraph::from_vector(inst, x, 1);
  if (!satisfies_cut_condition(j)) throw std::invalid_argument("x violates the edge cut condition");
  res.stats = split_to_terminals(j, allow_removal);
  const Rational unit(1, j.scale);
  std::map<std::pair<std::vector<int>, std::vector<int>>, Rational> merged;
  for (auto& e : j.edges) {
    auto nodes = e.walk_nodes;
    auto edges = e.walk_edges;
    excise_loops(nodes, edges);
    if (nodes.front() > nodes.back()) {
      std::reverse(nodes.begin(), nodes.end());
      std::reverse(edges.begin(), edges.end());
    }
    merged[{nodes, edges}] += unit;
  }
  for (auto& [key, value] : merged) {
    res.flow.paths.push_back(MultiflowPath{key.first, key.second, value});
  }
  return res;
}

MultiflowReport verify_multiflow(const Instance& inst, const Multiflow& flow) {
  MultiflowReport rep;
  rep.cost = 0;
  rep.load.assign(static_cast<size_t>(inst.num_edges()), Rational(0));
  rep.served.assign(static_cast<size_t>(inst.num_nodes()), Rational(0));
  auto fail = [&](std::string what) {
    rep.ok = false;
    rep.violations.push_back(std::move(what));
  };
  for (size_t i = 0; i < flow.paths.size(); ++i) {
    const auto& p = flow.paths[i];
    std::string tag = "path " + std::to_string(i);
    if (p.value <= 0) fail(tag + ": non-positive value");
    if (!is_half_integral(p.value)) rep.half_integral = false;
    if (!is_integer(p.value)) rep.integral = false;
    if (p.nodes.size() < 2 || p.edges.size() + 1 != p.nodes.size()) {
      fail(tag + ": malformed");
      continue;
    }
    int s = p.nodes.front();
    int t = p.nodes.back();
    if (!inst.is_terminal(s) || !inst.is_terminal(t) || s == t) {
      fail(tag + ": endpoints are not two distinct terminals");
    }
    auto sorted = p.nodes;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail(tag + ": repeats a node");
    for (size_t k = 0; k < p.edges.size(); ++k) {
      int e = p.edges[k];
      if (e < 0 || e >= inst.num_edges()) {
        fail(tag + ": unknown edge " + std::to_string(e));
        continue;
      }
      const auto& ed = inst.edge(e);
      if (!(ed.touches(p.nodes[k]) && ed.other(p.nodes[k]) == p.nodes[k + 1])) {
        fail(tag + ": edge " + std::to_string(e) + " does not join consecutive nodes");
      }
      rep.load[static_cast<size_t>(e)] += p.value;
      rep.cost += p.value * ed.cost;
    }
    rep.served[static_cast<size_t>(s)] += p.value;
    if (t != s) rep.served[static_cast<size_t>(t)] += p.value;
  }
  for (const auto& e : inst.edges()) {
    if (!e.capacity.admits(rep.load[static_cast<size_t>(e.id)])) {
      fail("edge " + std::to_string(e.id) + ": load " + to_string(rep.load[static_cast<size_t>(e.id)]) +
           " exceeds capacity " + std::to_string(e.capacity.value()));
    }
  }
  for (int t : inst.terminals()) {
    if (rep.served[static_cast<size_t>(t)] < inst.requirement(t)) {
      fail("terminal " + std::to_string(t) + ": served " + to_string(rep.served[static_cast<size_t>(t)]) +
           " of " + std::to_string(inst.requirement(t)));
    }
  }
  return rep;
}

}  // namespace tbackup
