#include <benchmark/benchmark.h>

#include <random>

#include "tbackup/generator.hpp"
#include "tbackup/lp.hpp"
#include "tbackup/maxflow.hpp"
#include "tbackup/multiflow.hpp"
#include "tbackup/pipeline.hpp"

using namespace tbackup;

namespace {

std::vector<Instance> batch(int nodes, std::optional<Mode> mode, int count = 8) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(nodes) * 7919u);
  GeneratorParams gp;
  gp.min_nodes = nodes;
  gp.max_nodes = nodes;
  gp.max_requirement = 3;
  gp.mode = mode;
  std::vector<Instance> out;
  for (int i = 0; i < count; ++i) out.push_back(random_feasible_instance(rng, gp).instance);
  return out;
}

void BM_MaxFlow(benchmark::State& state) {
  auto insts = batch(static_cast<int>(state.range(0)), Mode::Node);
  size_t i = 0;
  for (auto _ : state) {
    const auto& inst = insts[i++ % insts.size()];
    auto net = capacity_network(inst);
    for (int t : inst.terminals()) benchmark::DoNotOptimize(terminal_flow(inst, net, t).value);
  }
}
BENCHMARK(BM_MaxFlow)->Arg(8)->Arg(16)->Arg(32);

void BM_SolveLp(benchmark::State& state) {
  auto insts = batch(static_cast<int>(state.range(0)), std::nullopt);
  size_t i = 0;
  for (auto _ : state) {
    const auto& inst = insts[i++ % insts.size()];
    benchmark::DoNotOptimize(solve_lp(inst, perturb_costs(inst)).value);
  }
}
BENCHMARK(BM_SolveLp)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_Pipeline(benchmark::State& state) {
  auto insts = batch(static_cast<int>(state.range(0)), std::nullopt);
  size_t i = 0;
  for (auto _ : state) {
    const auto& inst = insts[i++ % insts.size()];
    benchmark::DoNotOptimize(solve(inst).cost);
  }
}
BENCHMARK(BM_Pipeline)->Arg(6)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_Multiflow(benchmark::State& state) {
  auto insts = batch(static_cast<int>(state.range(0)), Mode::Edge);
  std::vector<EdgeVector> xs;
  for (const auto& inst : insts) xs.push_back(solve(inst, {.lp_only = true}).solution);
  size_t i = 0;
  for (auto _ : state) {
    size_t k = i++ % insts.size();
    benchmark::DoNotOptimize(extract_multiflow(insts[k], xs[k]).stats.splits);
  }
}
BENCHMARK(BM_Multiflow)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
