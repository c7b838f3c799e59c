#include <benchmark/benchmark.h>

#include <random>

#include "flexgraph/decomposition.hpp"
#include "flexgraph/design.hpp"
#include "flexgraph/planning.hpp"
#include "flexgraph/queue_sim.hpp"

namespace {

using namespace flexgraph;

// Long-chain-like instance: unit rates, diagonal plus a random sprinkle of
// extra edges, so both redundant and CRP parts appear.
ProblemInstance chain_instance(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution extra(3.0 / n);
  std::vector<Rational> ones(static_cast<std::size_t>(n), Rational(1));
  EdgeSet edges;
  for (int i = 1; i <= n; ++i) {
    edges.insert({i, i});
    if (i < n && extra(rng)) edges.insert({i, i + 1});
    for (int j = 1; j <= n; ++j) {
      if (extra(rng)) edges.insert({i, j});
    }
  }
  return ProblemInstance::create(ones, ones, edges);
}

void BM_Decomposition(benchmark::State& state) {
  const auto inst = chain_instance(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(crp_decomposition(inst));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Decomposition)->RangeMultiplier(2)->Range(8, 128)->Complexity();

void BM_Design(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Rational> nu;
  std::vector<Rational> mu;
  for (int i = 0; i < n; ++i) {
    nu.emplace_back(1 + i % 3);
    mu.emplace_back(1 + (n - 1 - i) % 3);
  }
  for (auto _ : state) benchmark::DoNotOptimize(design_flexibility(nu, mu, 1));
}
BENCHMARK(BM_Design)->DenseRange(4, 10, 2);

void BM_PlanSchedule(benchmark::State& state) {
  const int eta = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(plan_schedule(eta, eta + eta / 2, Objective::sum()));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PlanSchedule)->RangeMultiplier(2)->Range(8, 256)->Complexity();

void BM_Simulate(benchmark::State& state) {
  const auto inst = chain_instance(8, 2);
  SimConfig config;
  config.horizon = state.range(0);
  config.replications = 1;
  for (auto _ : state) benchmark::DoNotOptimize(simulate(inst, config));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
