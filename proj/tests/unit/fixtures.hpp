#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "tbackup/generator.hpp"
#include "tbackup/instance.hpp"
#include "tbackup/io.hpp"

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(TBACKUP_TEST_DATA) + "/" + name; }

inline tbackup::Instance load(const std::string& name) { return tbackup::read_instance_file(data_path(name)); }

inline tbackup::Instance triangle() { return load("triangle.tb"); }
inline tbackup::Instance star() { return load("star.tb"); }
inline tbackup::Instance five_cycle() { return load("five_cycle.tb"); }

/// Deterministic batch of feasible random instances.
inline std::vector<tbackup::Instance> random_batch(std::uint64_t seed, int count, int max_nodes = 7,
                                                   std::optional<tbackup::Mode> mode = std::nullopt,
                                                   int max_requirement = 2) {
  std::mt19937_64 rng(seed);
  tbackup::GeneratorParams gp;
  gp.max_nodes = max_nodes;
  gp.mode = mode;
  gp.max_requirement = max_requirement;
  std::vector<tbackup::Instance> out;
  for (int i = 0; i < count; ++i) out.push_back(tbackup::random_feasible_instance(rng, gp).instance);
  return out;
}

}  // namespace fixtures
