#include <benchmark/benchmark.h>

#include "slantmap/sweep.hpp"

using namespace slantmap;

static void BM_SweepSerial(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_serial(7, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

static void BM_SweepParallel(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_parallel(7, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

static void BM_LuOnlyParallel(benchmark::State& state) {
  SweepOptions o;
  o.max_rank = 5;
  o.chen_ricci = false;
  o.casorati = false;
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_sweep_parallel(7, n, o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

BENCHMARK(BM_SweepSerial)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LuOnlyParallel)->Arg(10000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
