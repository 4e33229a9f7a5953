#include <benchmark/benchmark.h>

#include "looptrees/bijections.hpp"
#include "looptrees/exactasym.hpp"
#include "looptrees/laws.hpp"
#include "looptrees/metric.hpp"
#include "looptrees/rng.hpp"
#include "looptrees/sampler.hpp"

using namespace looptrees;

static void BM_WalkPmf(benchmark::State& state) {
  auto law = OffspringLaw::make_nu(0.5);
  const std::size_t n = state.range(0);
  for (auto _ : state) {
    auto pmf = walk_pmf(law, n, 2 * n);
    benchmark::DoNotOptimize(pmf.values.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_WalkPmf)->Range(1 << 8, 1 << 13)->Complexity();

static void BM_TildeTables(benchmark::State& state) {
  const std::size_t n = state.range(0);
  for (auto _ : state) {
    TildeTables t(n);
    benchmark::DoNotOptimize(t.q(n));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_TildeTables)->Range(1 << 8, 1 << 12)->Complexity();

static void BM_SampleConditioned(benchmark::State& state) {
  auto law = OffspringLaw::make_nu(0.5);
  const std::size_t n = state.range(0);
  ConditionedSampler cs(law, n);
  std::uint64_t stream = 0;
  for (auto _ : state) {
    CounterRng rng(12345, stream++);
    PlaneTree t = cs.sample(rng);
    benchmark::DoNotOptimize(t.degrees().data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_SampleConditioned)->Range(1 << 10, 1 << 14)->Complexity();

static void BM_LoopBarBfs(benchmark::State& state) {
  auto law = OffspringLaw::make_nu(0.5);
  const std::size_t n = state.range(0);
  ConditionedSampler cs(law, n);
  CounterRng rng(7, 0);
  LoopGraph g = loop_bar_of(cs.sample(rng));
  for (auto _ : state) {
    auto dist = bfs_distances(g, 0);
    benchmark::DoNotOptimize(dist.data());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_LoopBarBfs)->Range(1 << 10, 1 << 15)->Complexity();

BENCHMARK_MAIN();
