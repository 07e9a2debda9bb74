#include <benchmark/benchmark.h>

#include "safegen/algebra_check.hpp"
#include "safegen/battery.hpp"
#include "safegen/demos.hpp"

using namespace safegen;

static void BM_AlgebraSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_algebra_serial(1, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AlgebraSerial)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_AlgebraParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_algebra_parallel(1, n));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AlgebraParallel)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond)->UseRealTime();

static std::vector<ScenarioSpec> small_battery() {
  std::vector<ScenarioSpec> specs;
  for (const char* n : {"km_demo", "sg_inf", "naive_identify", "reduction", "telltale_bottom",
                        "conservative_fails"}) {
    specs.push_back(builtin_scenario(n));
  }
  return specs;
}

static void BM_BatterySerial(benchmark::State& state) {
  const auto specs = small_battery();
  for (auto _ : state) benchmark::DoNotOptimize(run_battery_serial(specs));
}
BENCHMARK(BM_BatterySerial)->Unit(benchmark::kMillisecond);

static void BM_BatteryParallel(benchmark::State& state) {
  const auto specs = small_battery();
  for (auto _ : state) benchmark::DoNotOptimize(run_battery_parallel(specs));
}
BENCHMARK(BM_BatteryParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
