#include "tbackup/generator.hpp"

#include <algorithm>
#include <numeric>

#include "tbackup/errors.hpp"
#include "tbackup/lp.hpp"

namespace tbackup {

std::uint64_t uniform_draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  if (span == 0) return lo + rng();
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return lo + r % span;
}

namespace {

// Probability draw in [0, 1) with 2^-53 resolution.
double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

Instance random_instance(std::mt19937_64& rng, const GeneratorParams& params) {
  const int n = static_cast<int>(uniform_draw(rng, static_cast<std::uint64_t>(params.min_nodes),
                                              static_cast<std::uint64_t>(params.max_nodes)));
  const double density = params.min_density + (params.max_density - params.min_density) * unit_draw(rng);
  std::vector<EdgeSpec> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (unit_draw(rng) >= density) continue;
      EdgeSpec e;
      e.u = u;
      e.v = v;
      e.cost = static_cast<long>(uniform_draw(rng, 1, static_cast<std::uint64_t>(params.max_cost)));
      switch (uniform_draw(rng, 0, 2)) {
        case 0: e.capacity = Capacity::finite(1); break;
        case 1: e.capacity = Capacity::finite(2); break;
        default: e.capacity = Capacity::unbounded(); break;
      }
      edges.push_back(e);
    }
  }
  const int k = static_cast<int>(uniform_draw(rng, 2, static_cast<std::uint64_t>(n)));
  std::vector<int> nodes(static_cast<size_t>(n));
  std::iota(nodes.begin(), nodes.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    auto j = static_cast<int>(uniform_draw(rng, 0, static_cast<std::uint64_t>(i)));
    std::swap(nodes[static_cast<size_t>(i)], nodes[static_cast<size_t>(j)]);
  }
  std::vector<std::pair<int, int>> req;
  for (int i = 0; i < k; ++i) {
    req.emplace_back(nodes[static_cast<size_t>(i)],
                     static_cast<int>(uniform_draw(rng, 1, static_cast<std::uint64_t>(params.max_requirement))));
  }
  Mode mode = params.mode ? *params.mode : (uniform_draw(rng, 0, 1) == 0 ? Mode::Edge : Mode::Node);
  return Instance(n, edges, req, mode);
}

GeneratedInstance random_feasible_instance(std::mt19937_64& rng, const GeneratorParams& params) {
  int rejected = 0;
  for (;;) {
    Instance inst = random_instance(rng, params);
    try {
      check_capacity_feasible(inst);
      return GeneratedInstance{std::move(inst), rejected};
    } catch (const Infeasible&) {
      ++rejected;
    }
  }
}

}  // namespace tbackup
