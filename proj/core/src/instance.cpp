#include "tbackup/instance.hpp"

#include <algorithm>
#include <string>

#include "tbackup/errors.hpp"

namespace tbackup {

const char* to_string(Mode mode) { return mode == Mode::Edge ? "edge" : "node"; }

Capacity Capacity::finite(std::int64_t value) {
  if (value < 0) throw InvalidInstance("negative capacity");
  return Capacity(value);
}

bool Capacity::admits(const Rational& x) const {
  return is_unbounded() || x <= Rational(static_cast<long>(*value_));
}

Instance::Instance(int num_nodes, const std::vector<EdgeSpec>& edges,
                   const std::vector<std::pair<int, int>>& requirements, Mode mode)
    : num_nodes_(num_nodes),
      requirement_(static_cast<size_t>(std::max(num_nodes, 0)), 0),
      mode_(mode),
      incident_(static_cast<size_t>(std::max(num_nodes, 0))) {
  if (num_nodes < 2) throw InvalidInstance("an instance needs at least two nodes");
  auto check_node = [&](int v, const std::string& what) {
    if (v < 0 || v >= num_nodes) {
      throw InvalidInstance(what + " refers to undeclared node " + std::to_string(v));
    }
  };
  for (const auto& [t, r] : requirements) {
    check_node(t, "terminal");
    if (r <= 0) throw InvalidInstance("requirement of terminal " + std::to_string(t) +
                                      " must be positive");
    if (requirement_[static_cast<size_t>(t)] != 0) {
      throw InvalidInstance("terminal " + std::to_string(t) + " listed twice");
    }
    requirement_[static_cast<size_t>(t)] = r;
    terminals_.push_back(t);
    max_requirement_ = std::max(max_requirement_, r);
  }
  std::sort(terminals_.begin(), terminals_.end());
  if (terminals_.size() < 2) throw InvalidInstance("at least two terminals are required");

  edges_.reserve(edges.size());
  for (const auto& spec : edges) {
    int id = static_cast<int>(edges_.size());
    check_node(spec.u, "edge " + std::to_string(id));
    check_node(spec.v, "edge " + std::to_string(id));
    if (spec.u == spec.v) throw InvalidInstance("edge " + std::to_string(id) + " is a self-loop");
    if (spec.cost < 0) throw InvalidInstance("edge " + std::to_string(id) + " has negative cost");
    edges_.push_back(Edge{id, spec.u, spec.v, spec.cost, spec.capacity});
    incident_[static_cast<size_t>(spec.u)].push_back(id);
    incident_[static_cast<size_t>(spec.v)].push_back(id);
  }
}

Instance Instance::with_mode(Mode mode) const {
  Instance copy = *this;
  copy.mode_ = mode;
  return copy;
}

std::vector<Rational> Instance::costs() const {
  std::vector<Rational> c;
  c.reserve(edges_.size());
  for (const auto& e : edges_) c.push_back(e.cost);
  return c;
}

}  // namespace tbackup
