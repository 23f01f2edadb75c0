#include "tbackup/lp.hpp"

#include <algorithm>
#include <numeric>

#include "tbackup/errors.hpp"
#include "log.hpp"
#include "tbackup/maxflow.hpp"

namespace tbackup {

std::vector<Rational> perturb_costs(const Instance& inst) {
  mpz_class theta = 1;
  for (const auto& e : inst.edges()) {
    if (e.cost.get_den() > theta) theta = e.cost.get_den();
  }
  Rational eps(mpz_class(1), theta * inst.num_edges());
  eps.canonicalize();
  std::vector<Rational> out = inst.costs();
  for (auto& c : out) {
    if (c == 0) c = eps;
  }
  return out;
}

std::optional<Violation> find_violation(const Instance& inst, const EdgeVector& x) {
  FlowNetwork net = connectivity_network(inst, x);
  for (int t : inst.terminals()) {
    MaxFlow f = terminal_flow(inst, net, t);
    if (f.value < inst.requirement(t)) return Violation{t, f.cut, f.value};
  }
  return std::nullopt;
}

bool is_feasible(const Instance& inst, const EdgeVector& x) { return !find_violation(inst, x); }

void check_capacity_feasible(const Instance& inst) {
  FlowNetwork net = capacity_network(inst);
  for (int t : inst.terminals()) {
    MaxFlow f = terminal_flow(inst, net, t);
    if (!f.unbounded && f.value < inst.requirement(t)) {
      throw Infeasible("terminal " + std::to_string(t) + " reaches the other terminals with at most " +
                       to_string(f.value) + " disjoint paths, requirement " +
                       std::to_string(inst.requirement(t)));
    }
  }
}

CutLp::CutLp(const Instance& inst, std::vector<Rational> costs, EdgeVector base,
             std::vector<std::optional<Rational>> upper)
    : inst_(inst),
      costs_(std::move(costs)),
      base_(std::move(base)),
      lower_(static_cast<size_t>(inst.num_edges()), Rational(0)),
      upper_(upper),
      default_upper_(std::move(upper)) {
  for (int t : inst.terminals()) add_cut(Biset::singleton(inst.num_nodes(), t));
}

void CutLp::pin(int e, const Rational& value) {
  lower_[static_cast<size_t>(e)] = value;
  upper_[static_cast<size_t>(e)] = value;
}

void CutLp::unpin(int e) {
  lower_[static_cast<size_t>(e)] = 0;
  upper_[static_cast<size_t>(e)] = default_upper_[static_cast<size_t>(e)];
}

bool CutLp::add_cut(const Biset& b) {
  if (std::find(pool_.begin(), pool_.end(), b) != pool_.end()) return false;
  pool_.push_back(b);
  return true;
}

std::optional<CutLp::Result> CutLp::solve() {
  std::optional<Rational> previous;
  for (;;) {
    ++rounds_;
    LpProblem lp;
    lp.num_vars = inst_.num_edges();
    lp.cost = costs_;
    lp.lower = lower_;
    lp.upper = upper_;
    for (const auto& b : pool_) {
      LpRow row;
      row.rhs = Rational(h_value(inst_, b)) - boundary(base_, b, inst_.edges());
      if (row.rhs <= 0) continue;
      for (int e : boundary_edges(inst_, b)) row.coeffs.emplace_back(e, Rational(1));
      lp.rows.push_back(std::move(row));
    }
    LpSolution sol = solve_exact_lp(lp);
    ++lp_solves_;
    if (!sol.feasible) return std::nullopt;
    if (previous && sol.value < *previous) throw InternalError("cutting-plane value decreased");
    previous = sol.value;

    EdgeVector x(sol.x);
    FlowNetwork net = connectivity_network(inst_, base_ + x);
    bool added = false;
    for (int t : inst_.terminals()) {
      MaxFlow f = terminal_flow(inst_, net, t);
      if (f.value >= inst_.requirement(t)) continue;
      if (!add_cut(f.cut)) throw InternalError("separation returned a cut already in the pool");
      TB_LOG_TRACE("cut for terminal {}: {} (flow {})", t, format_biset(f.cut), to_string(f.value));
      added = true;
    }
    if (!added) return Result{std::move(x), sol.value};
  }
}

LpOutcome solve_lp(const Instance& inst, const std::vector<Rational>& costs) {
  check_capacity_feasible(inst);
  std::vector<std::optional<Rational>> upper;
  for (const auto& e : inst.edges()) {
    if (e.capacity.is_unbounded()) {
      upper.emplace_back();
    } else {
      upper.emplace_back(Rational(static_cast<long>(e.capacity.value())));
    }
  }
  CutLp lp(inst, costs, EdgeVector(inst.num_edges()), upper);
  auto res = lp.solve();
  if (!res) throw InternalError("LP infeasible although capacities suffice");
  return LpOutcome{res->x, res->value, lp.rounds(), static_cast<int>(lp.pool().size())};
}

std::vector<std::optional<Rational>> residual_bounds(const Instance& inst, const EdgeVector& floor_part) {
  std::vector<std::optional<Rational>> upper;
  for (const auto& e : inst.edges()) {
    Rational room = 1;
    if (!e.capacity.is_unbounded()) {
      Rational left = Rational(static_cast<long>(e.capacity.value())) - floor_part[e.id];
      if (left < room) room = left;
    }
    upper.emplace_back(room);
  }
  return upper;
}

Refinement refine_to_extreme_point(const Instance& inst, const std::vector<Rational>& costs,
                                   const EdgeVector& x_star, std::vector<int> order) {
  const int m = inst.num_edges();
  Refinement out;
  out.floor_part = EdgeVector(m);
  for (int e = 0; e < m; ++e) out.floor_part[e] = floor_of(x_star[e]);
  if (order.empty()) {
    order.resize(static_cast<size_t>(m));
    std::iota(order.begin(), order.end(), 0);
  }
  out.order = order;

  EdgeVector frac(m);
  for (int e = 0; e < m; ++e) frac[e] = x_star[e] - out.floor_part[e];
  const Rational target = frac.dot(costs);
  auto upper = residual_bounds(inst, out.floor_part);

  CutLp lp(inst, costs, out.floor_part, upper);
  auto current = lp.solve();
  if (!current || current->value != target) {
    throw InternalError("residual LP optimum differs from the fractional part of x*");
  }
  const Rational half(1, 2);
  for (int e : order) {
    const auto& cap = *upper[static_cast<size_t>(e)];
    if (current->x[e] == 0 || cap == 0) {
      lp.pin(e, 0);
      continue;
    }
    bool fixed = false;
    for (const Rational& v : {Rational(0), Rational(1)}) {
      if (v > cap) continue;
      lp.pin(e, v);
      auto trial = lp.solve();
      if (trial && trial->value == target) {
        current = std::move(trial);
        fixed = true;
        break;
      }
    }
    if (fixed) continue;
    lp.pin(e, half);
    auto trial = lp.solve();
    if (!trial || trial->value != target) {
      throw InternalError("pinning edge " + std::to_string(e) + " to 1/2 changed the optimum");
    }
    current = std::move(trial);
  }
  out.half_part = current->x;
  out.residual_value = current->value;
  for (int e = 0; e < m; ++e) {
    const auto& v = out.half_part[e];
    if (v != 0 && v != half && v != 1) {
      throw InternalError("refined value of edge " + std::to_string(e) + " is " + to_string(v));
    }
  }
  TB_LOG_DEBUG("refinement: {} LP solves, pool {}", lp.lp_solves(), lp.pool().size());
  return out;
}

void assert_minimal(const Instance& inst, const EdgeVector& x) {
  const Rational half(1, 2);
  for (int e = 0; e < inst.num_edges(); ++e) {
    if (x[e] < half) continue;
    EdgeVector y = x;
    y[e] -= half;
    if (is_feasible(inst, y)) throw NotMinimal(e);
  }
}

std::optional<int> fractional_degree_node(const Instance& inst, const EdgeVector& x) {
  for (int v = 0; v < inst.num_nodes(); ++v) {
    Rational d = 0;
    for (int e : inst.incident(v)) d += x[e];
    if (!is_integer(d)) return v;
  }
  return std::nullopt;
}

}  // namespace tbackup
