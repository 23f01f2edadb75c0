#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "tbackup/instance.hpp"

namespace tbackup {

struct GeneratorParams {
  int min_nodes = 3;
  int max_nodes = 7;
  double min_density = 0.4;
  double max_density = 0.9;
  int max_cost = 10;
  int max_requirement = 2;
  /// Fixed mode, or a fair coin per instance.
  std::optional<Mode> mode;
};

/// Uniform integer in [lo, hi] by rejection, identical on every platform.
std::uint64_t uniform_draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);

/// One random draw; may be infeasible.
Instance random_instance(std::mt19937_64& rng, const GeneratorParams& params = {});

struct GeneratedInstance {
  Instance instance;
  /// Infeasible draws discarded before this one.
  int rejected = 0;
};

/// Draws until the instance passes the capacity feasibility check.
GeneratedInstance random_feasible_instance(std::mt19937_64& rng, const GeneratorParams& params = {});

}  // namespace tbackup
