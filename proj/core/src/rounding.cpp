#include "tbackup/rounding.hpp"

#include <algorithm>
#include <map>

#include "log.hpp"
#include "tbackup/errors.hpp"
#include "tbackup/lp.hpp"

namespace tbackup {

std::vector<HalfCycle> decompose_cycles(const Instance& inst, const std::vector<int>& half_edges,
                                        const StructureReport& report) {
  const auto n = static_cast<size_t>(inst.num_nodes());
  std::vector<std::vector<int>> at(n);
  for (int e : half_edges) {
    at[static_cast<size_t>(inst.edge(e).u)].push_back(e);
    at[static_cast<size_t>(inst.edge(e).v)].push_back(e);
  }
  std::vector<std::map<int, int>> partner(n);
  auto pair_up = [&](size_t v, int a, int b) {
    partner[v][a] = b;
    partner[v][b] = a;
  };
  for (size_t v = 0; v < n; ++v) {
    const auto& es = at[v];
    if (es.size() % 2 != 0) throw OddDegree(static_cast<int>(v));
    if (es.size() == 2) pair_up(v, es[0], es[1]);
    if (es.size() > 4) {
      throw StructureViolation("node " + std::to_string(v) + " has half degree " + std::to_string(es.size()));
    }
    if (es.size() == 4) {
      auto w = std::find_if(report.witnesses.begin(), report.witnesses.end(),
                            [&](const DegreeFourWitness& d) { return d.node == static_cast<int>(v); });
      if (w == report.witnesses.end()) {
        throw StructureViolation("degree-4 node " + std::to_string(v) + " has no witness");
      }
      pair_up(v, w->outer_edges[0], w->outer_edges[1]);
      pair_up(v, w->inner_edges[0], w->inner_edges[1]);
    }
  }

  std::vector<HalfCycle> cycles;
  std::vector<char> used(static_cast<size_t>(inst.num_edges()), 0);
  for (int first : half_edges) {
    if (used[static_cast<size_t>(first)]) continue;
    HalfCycle cyc;
    const int start = inst.edge(first).u;
    int e = first;
    int from = start;
    for (;;) {
      int to = inst.edge(e).other(from);
      if (used[static_cast<size_t>(e)]) throw InternalError("closed trail reused an edge");
      used[static_cast<size_t>(e)] = 1;
      cyc.steps.push_back(CycleStep{e, from, to});
      int next = partner[static_cast<size_t>(to)].at(e);
      if (next == first && to == start) break;
      from = to;
      e = next;
    }
    cycles.push_back(std::move(cyc));
  }
  return cycles;
}

namespace {

// Terminal -> outward flag for one step; throws on inconsistent sides.
std::map<int, bool> step_sides(const LaminarFamily& fam, const CycleStep& s) {
  std::map<int, bool> sides;
  for (const auto& entry : fam.entries) {
    const auto& hb = entry.half_boundary;
    if (!std::binary_search(hb.begin(), hb.end(), s.edge)) continue;
    bool out = entry.biset.inner().test(static_cast<size_t>(s.from));
    auto [it, fresh] = sides.emplace(entry.terminal, out);
    if (!fresh && it->second != out) {
      throw CycleSequenceError("edge " + std::to_string(s.edge) + " crosses bisets of terminal " +
                               std::to_string(entry.terminal) + " in both directions");
    }
  }
  return sides;
}

}  // namespace

HalfCycle sequence_terminals(const Instance& inst, const LaminarFamily& fam, HalfCycle cycle) {
  (void)inst;
  const int m = static_cast<int>(cycle.steps.size());
  std::vector<std::map<int, bool>> sides(static_cast<size_t>(m));
  std::vector<int> boundary;
  std::vector<int> head(static_cast<size_t>(m), -1), tail(static_cast<size_t>(m), -1);
  for (int p = 0; p < m; ++p) {
    auto& sd = sides[static_cast<size_t>(p)];
    sd = step_sides(fam, cycle.steps[static_cast<size_t>(p)]);
    if (sd.empty()) {
      throw CycleSequenceError("half edge " + std::to_string(cycle.steps[static_cast<size_t>(p)].edge) +
                               " crosses no biset of the family");
    }
    if (sd.size() > 2) throw CycleSequenceError("half edge crosses bisets of three terminals");
    if (sd.size() == 2) {
      for (const auto& [t, out] : sd) {
        (out ? tail : head)[static_cast<size_t>(p)] = t;
      }
      if (head[static_cast<size_t>(p)] < 0 || tail[static_cast<size_t>(p)] < 0) {
        throw CycleSequenceError("boundary edge does not pass between two terminals");
      }
      boundary.push_back(p);
    }
  }
  const int k = static_cast<int>(boundary.size());
  if (k == 0) throw CycleSequenceError("cycle meets a single terminal (k = 1)");
  if (k % 2 == 0) throw CycleSequenceError("cycle has even terminal count k = " + std::to_string(k));

  // Walk between consecutive boundary steps: everything in between must belong
  // to the terminal just entered, and the next boundary must leave it.
  for (int b = 0; b < k; ++b) {
    int p = boundary[static_cast<size_t>(b)];
    int q = boundary[static_cast<size_t>((b + 1) % k)];
    int t = head[static_cast<size_t>(p)];
    if (tail[static_cast<size_t>(q)] != t) {
      throw CycleSequenceError("terminal " + std::to_string(t) + " is left through a biset of another terminal");
    }
    for (int r = (p + 1) % m; r != q; r = (r + 1) % m) {
      const auto& sd = sides[static_cast<size_t>(r)];
      if (sd.size() != 1 || sd.begin()->first != t) {
        throw CycleSequenceError("interior edge " + std::to_string(cycle.steps[static_cast<size_t>(r)].edge) +
                                 " does not belong to terminal " + std::to_string(t));
      }
    }
  }

  int chosen = -1;
  for (int b = 0; b < k; ++b) {
    int p = boundary[static_cast<size_t>(b)];
    int next = boundary[static_cast<size_t>((b + 1) % k)];
    if (head[static_cast<size_t>(next)] != tail[static_cast<size_t>(p)]) {
      chosen = b;
      break;
    }
  }
  if (chosen < 0) throw CycleSequenceError("no start edge with t2 != tk");

  const int shift = boundary[static_cast<size_t>(chosen)];
  HalfCycle out;
  for (int p = 0; p < m; ++p) out.steps.push_back(cycle.steps[static_cast<size_t>((p + shift) % m)]);
  out.segments.resize(static_cast<size_t>(m));
  out.outward.resize(static_cast<size_t>(m));
  for (int b = 0; b < k; ++b) {
    int p = boundary[static_cast<size_t>((b + chosen) % k)];
    out.boundary_steps.push_back(((p - shift) % m + m) % m);
    out.terminals.push_back(head[static_cast<size_t>(p)]);
  }
  for (int i = 0; i < k; ++i) {
    int from = out.boundary_steps[static_cast<size_t>(i)];
    int to = i + 1 < k ? out.boundary_steps[static_cast<size_t>(i + 1)] : m;
    int t = out.terminals[static_cast<size_t>(i)];
    for (int p = from; p <= to; ++p) {
      int q = p % m;
      const auto& sd = sides[static_cast<size_t>((q + shift) % m)];
      out.segments[static_cast<size_t>(q)].push_back(i);
      out.outward[static_cast<size_t>(q)].push_back(sd.at(t));
    }
  }
  return out;
}

namespace {

Label rule(int i, int j, bool outward) {
  if (i == j) return Label::Plus;
  int d = j > i ? j - i : i - j;
  bool plus = (d % 2 == 1) ? !outward : outward;
  if (j < i) plus = !plus;
  return plus ? Label::Plus : Label::Minus;
}

}  // namespace

std::vector<LabelAssignment> label_assignments(const HalfCycle& cycle, const std::vector<Rational>& costs) {
  if (!cycle.sequenced()) throw CycleSequenceError("cycle is not sequenced");
  const int k = cycle.k();
  std::vector<LabelAssignment> out;
  for (int i = 0; i < k; ++i) {
    LabelAssignment a;
    a.index = i;
    a.cost = 0;
    for (size_t p = 0; p < cycle.steps.size(); ++p) {
      const auto& segs = cycle.segments[p];
      Label l = rule(i, segs[0], cycle.outward[p][0]);
      for (size_t s = 1; s < segs.size(); ++s) {
        if (rule(i, segs[s], cycle.outward[p][s]) != l) {
          throw CycleSequenceError("assignment " + std::to_string(i + 1) + " labels edge " +
                                   std::to_string(cycle.steps[p].edge) + " inconsistently");
        }
      }
      a.labels.push_back(l);
      if (l == Label::Plus) a.cost += costs[static_cast<size_t>(cycle.steps[p].edge)];
    }
    const int prev = cycle.terminals[static_cast<size_t>((i + k - 1) % k)];
    const int next = cycle.terminals[static_cast<size_t>((i + 1) % k)];
    a.rotatable = prev != next;
    out.push_back(std::move(a));
  }
  return out;
}

LabelAssignment best_rounding(const HalfCycle& cycle, const std::vector<Rational>& costs) {
  auto all = label_assignments(cycle, costs);
  size_t best = 0;
  for (size_t i = 1; i < all.size(); ++i) {
    if (all[i].cost < all[best].cost) best = i;
  }
  return all[best];
}

RoundingResult round_solution(const Instance& inst, const EdgeVector& floor_part,
                              const EdgeVector& half_part, const LaminarFamily& fam,
                              const std::vector<Rational>& costs, RoundingPolicy policy) {
  RoundingResult res;
  res.structure = structure_check(inst, fam, half_part);
  // Integral part plus every half edge still at 1/2; cycles overwrite theirs.
  EdgeVector current = floor_part + half_part;
  for (auto& raw : decompose_cycles(inst, fam.half_edges, res.structure)) {
    HalfCycle cyc = sequence_terminals(inst, fam, std::move(raw));
    auto all = label_assignments(cyc, costs);
    std::vector<size_t> by_cost(all.size());
    for (size_t i = 0; i < all.size(); ++i) by_cost[i] = i;
    std::stable_sort(by_cost.begin(), by_cost.end(),
                     [&](size_t a, size_t b) { return all[a].cost < all[b].cost; });
    auto apply = [&](const LabelAssignment& a) {
      EdgeVector y = current;
      for (size_t p = 0; p < cyc.steps.size(); ++p) {
        int e = cyc.steps[p].edge;
        y[e] = floor_part[e] + (a.labels[p] == Label::Plus ? 1 : 0);
      }
      return y;
    };
    std::optional<size_t> best;
    for (size_t i : by_cost) {
      if (policy == RoundingPolicy::Cheapest) {
        best = i;
        break;
      }
      bool ok = is_feasible(inst, apply(all[i]));
      all[i].feasible = ok;
      if (ok) {
        best = i;
        break;
      }
      TB_LOG_DEBUG("cycle assignment {} of cost {} violates a cut (rotatable: {})", i + 1,
                   to_string(all[i].cost), all[i].rotatable);
    }
    if (!best) throw InternalError("no label assignment of a half cycle keeps the solution feasible");
    current = apply(all[*best]);
    TB_LOG_DEBUG("cycle k={} chose assignment {} of cost {}", cyc.k(), *best + 1, to_string(all[*best].cost));
    res.chosen.push_back(static_cast<int>(*best));
    res.assignments.push_back(std::move(all));
    res.cycles.push_back(std::move(cyc));
  }
  res.x = current;
  if (!res.x.is_integral()) throw InternalError("half edge left outside every cycle");
  for (const auto& e : inst.edges()) {
    if (!e.capacity.admits(res.x[e.id])) {
      throw InternalError("rounded value of edge " + std::to_string(e.id) + " exceeds its capacity");
    }
  }
  if (auto v = find_violation(inst, res.x)) {
    throw InternalError("rounded solution violates the cut of terminal " + std::to_string(v->terminal) +
                        " at " + format_biset(v->biset));
  }
  return res;
}

}  // namespace tbackup
