#include "tbackup/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "tbackup/biset.hpp"
#include "tbackup/errors.hpp"
#include "tbackup/lp.hpp"
#include "tbackup/maxflow.hpp"
#include "tbackup/simplex.hpp"

namespace tbackup {

VerificationReport verify_solution(const Instance& inst, const EdgeVector& y) {
  VerificationReport rep;
  rep.cost = y.dot(inst.costs());
  for (const auto& e : inst.edges()) {
    const auto& v = y[e.id];
    if (!is_integer(v) || v < 0) {
      rep.feasible = false;
      rep.diagnostics.push_back("edge " + std::to_string(e.id) + ": value " + to_string(v) +
                                " is not a non-negative integer");
    }
    if (!e.capacity.admits(v)) {
      rep.feasible = false;
      rep.diagnostics.push_back("edge " + std::to_string(e.id) + ": value " + to_string(v) +
                                " exceeds capacity " + std::to_string(e.capacity.value()));
    }
  }
  FlowNetwork net = connectivity_network(inst, y);
  for (int t : inst.terminals()) {
    MaxFlow f = terminal_flow(inst, net, t);
    rep.connectivity.push_back(f.value);
    if (f.value < inst.requirement(t)) {
      rep.feasible = false;
      rep.diagnostics.push_back("terminal " + std::to_string(t) + ": connectivity " + to_string(f.value) +
                                " below requirement " + std::to_string(inst.requirement(t)));
    }
  }
  return rep;
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, const BruteForceOptions& opt) : inst_(inst), opt_(opt) {
    const int m = inst.num_edges();
    order_.resize(static_cast<size_t>(m));
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(),
                     [&](int a, int b) { return inst.edge(a).cost > inst.edge(b).cost; });
    cap_.resize(static_cast<size_t>(m));
    const long bound = inst.max_requirement() + opt.cap_slack;
    for (const auto& e : inst.edges()) {
      cap_[static_cast<size_t>(e.id)] = e.capacity.is_unbounded() ? bound : std::min<long>(bound, e.capacity.value());
    }
    y_ = EdgeVector(m);
    for (int e = 0; e < m; ++e) y_[e] = cap_[static_cast<size_t>(e)];
  }

  BruteForceResult run() {
    if (!is_feasible(inst_, y_)) throw Infeasible("no integer solution within the search caps");
    greedy_incumbent();
    dfs(0, Rational(0));
    return BruteForceResult{best_cost_, best_, nodes_};
  }

 private:
  void greedy_incumbent() {
    EdgeVector z = y_;
    for (int e : order_) {
      while (z[e] > 0) {
        z[e] -= 1;
        if (!is_feasible(inst_, z)) {
          z[e] += 1;
          break;
        }
      }
    }
    best_ = z;
    best_cost_ = z.dot(inst_.costs());
  }

  Rational lower_bound(size_t depth) const {
    Rational lb = 0;
    for (int t : inst_.terminals()) {
      Rational have = 0;
      std::optional<Rational> cheapest;
      for (int e : inst_.incident(t)) {
        if (decided_[static_cast<size_t>(e)]) {
          have += y_[e];
        } else if (!cheapest || inst_.edge(e).cost < *cheapest) {
          cheapest = inst_.edge(e).cost;
        }
      }
      Rational deficit = Rational(inst_.requirement(t)) - have;
      if (deficit > 0 && cheapest) lb += deficit * *cheapest / 2;
    }
    (void)depth;
    return lb;
  }

  void dfs(size_t depth, const Rational& cost) {
    if (++nodes_ > opt_.node_limit) throw TooLarge("branch and bound exceeded its node limit");
    if (cost + lower_bound(depth) >= best_cost_) return;
    if (depth == order_.size()) {
      best_cost_ = cost;
      best_ = y_;
      return;
    }
    int e = order_[depth];
    const long cap = cap_[static_cast<size_t>(e)];
    decided_[static_cast<size_t>(e)] = 1;
    for (long v = 0; v <= cap; ++v) {
      y_[e] = v;
      if (v < cap && !is_feasible(inst_, y_)) continue;
      dfs(depth + 1, cost + inst_.edge(e).cost * v);
    }
    y_[e] = cap;
    decided_[static_cast<size_t>(e)] = 0;
  }

  const Instance& inst_;
  BruteForceOptions opt_;
  std::vector<int> order_;
  std::vector<long> cap_;
  EdgeVector y_;
  std::vector<char> decided_ = std::vector<char>(static_cast<size_t>(inst_.num_edges()), 0);
  EdgeVector best_;
  Rational best_cost_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

BruteForceResult brute_force_optimum(const Instance& inst, const BruteForceOptions& opt) {
  if (inst.num_edges() > opt.max_edges) {
    throw TooLarge("brute force limited to " + std::to_string(opt.max_edges) + " edges");
  }
  return BranchAndBound(inst, opt).run();
}

ExhaustiveLp exhaustive_lp_check(const Instance& inst, int max_nodes) {
  if (inst.num_nodes() > max_nodes) {
    throw TooLarge("exhaustive LP limited to " + std::to_string(max_nodes) + " nodes");
  }
  std::map<std::vector<int>, int> rows;
  for_each_c_biset(inst, [&](const Biset& b) {
    int h = h_value(inst, b);
    if (h <= 0) return true;
    auto edges = boundary_edges(inst, b);
    if (edges.empty()) throw Infeasible("biset " + format_biset(b) + " has no crossing edge");
    auto& rhs = rows[edges];
    rhs = std::max(rhs, h);
    return true;
  });
  LpProblem lp;
  lp.num_vars = inst.num_edges();
  lp.cost = inst.costs();
  lp.lower.assign(static_cast<size_t>(inst.num_edges()), Rational(0));
  for (const auto& e : inst.edges()) {
    if (e.capacity.is_unbounded()) {
      lp.upper.emplace_back();
    } else {
      lp.upper.emplace_back(Rational(static_cast<long>(e.capacity.value())));
    }
  }
  for (const auto& [edges, rhs] : rows) {
    LpRow row;
    row.rhs = rhs;
    for (int e : edges) row.coeffs.emplace_back(e, Rational(1));
    lp.rows.push_back(std::move(row));
  }
  LpSolution sol = solve_exact_lp(lp);
  if (!sol.feasible) throw Infeasible("exhaustive LP is infeasible");
  return ExhaustiveLp{sol.value, EdgeVector(sol.x), static_cast<int>(rows.size())};
}

bool integral_multiflow_exists(const Instance& inst, bool unit_capacity, int max_paths) {
  std::vector<std::vector<int>> paths;  // edge lists
  std::vector<std::pair<int, int>> ends;
  const int n = inst.num_nodes();
  for (int s : inst.terminals()) {
    std::vector<char> on(static_cast<size_t>(n), 0);
    std::vector<int> stack;
    std::function<void(int)> walk = [&](int v) {
      if (v != s && inst.is_terminal(v)) {
        if (s < v) {
          if (static_cast<int>(paths.size()) >= max_paths) throw TooLarge("too many terminal paths");
          paths.push_back(stack);
          ends.emplace_back(s, v);
        }
        return;
      }
      on[static_cast<size_t>(v)] = 1;
      for (int e : inst.incident(v)) {
        int w = inst.edge(e).other(v);
        if (on[static_cast<size_t>(w)]) continue;
        stack.push_back(e);
        walk(w);
        stack.pop_back();
      }
      on[static_cast<size_t>(v)] = 0;
    };
    walk(s);
  }

  long total_req = 0;
  for (int t : inst.terminals()) total_req += inst.requirement(t);
  std::vector<long> room;
  for (const auto& e : inst.edges()) {
    room.push_back(unit_capacity ? 1 : e.capacity.value_or(total_req));
  }
  std::vector<long> need(static_cast<size_t>(n), 0);
  for (int t : inst.terminals()) need[static_cast<size_t>(t)] = inst.requirement(t);

  std::function<bool(size_t)> search = [&](size_t i) {
    bool done = std::all_of(need.begin(), need.end(), [](long d) { return d <= 0; });
    if (done) return true;
    if (i == paths.size()) return false;
    long most = total_req;
    for (int e : paths[i]) most = std::min(most, room[static_cast<size_t>(e)]);
    auto [a, b] = ends[i];
    for (long v = most; v >= 0; --v) {
      for (int e : paths[i]) room[static_cast<size_t>(e)] -= v;
      need[static_cast<size_t>(a)] -= v;
      need[static_cast<size_t>(b)] -= v;
      bool ok = search(i + 1);
      for (int e : paths[i]) room[static_cast<size_t>(e)] += v;
      need[static_cast<size_t>(a)] += v;
      need[static_cast<size_t>(b)] += v;
      if (ok) return true;
    }
    return false;
  };
  return search(0);
}

}  // namespace tbackup
