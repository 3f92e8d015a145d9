#include <benchmark/benchmark.h>

#include <numeric>

#include "gridarena/driver.hpp"
#include "gridarena/landscape.hpp"
#include "gridarena/metrics.hpp"

namespace {

using namespace gridarena;

ScoreTable bowl_table(std::size_t a, std::size_t b, std::size_t folds) {
  LandscapeSpec land;
  land.spec = GridSpec::from_sizes({a, b});
  land.noise_sd = 0.05;
  land.seed = 1;
  return synth_table(land, folds);
}

void BM_PBetterThanRandom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto l = budget_for(1, n);
  std::vector<std::size_t> ranks(l);
  std::iota(ranks.begin(), ranks.end(), n / 2);
  for (auto _ : state)
    benchmark::DoNotOptimize(p_better_than_random(ranks, n, RankStatistic::Dcg10, 10'000, 3));
  state.SetItemsProcessed(state.iterations() * 10'000);
}
BENCHMARK(BM_PBetterThanRandom)->Arg(63)->Arg(315)->Arg(1000);

void BM_ExpectedRandomBest(benchmark::State& state) {
  const auto t = bowl_table(static_cast<std::size_t>(state.range(0)), 10, 1);
  const auto order = t.validation_order(View::fold(1));
  for (auto _ : state) benchmark::DoNotOptimize(expected_random_best(order, budget_for(1, t.size())));
}
BENCHMARK(BM_ExpectedRandomBest)->Arg(10)->Arg(100);

void BM_Run(benchmark::State& state) {
  const auto kind = static_cast<EngineKind>(state.range(0));
  const auto t = bowl_table(11, 10, 3);
  EngineConfig c;
  c.kind = kind;
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(run(c, t, "bench", View::cv(), 3, seed++));
  state.SetLabel(to_string(kind));
}
BENCHMARK(BM_Run)->DenseRange(0, 6);

}  // namespace
BENCHMARK_MAIN();
