#include <benchmark/benchmark.h>

#include "propfair/allocators.hpp"
#include "propfair/distributions.hpp"
#include "propfair/exact_checker.hpp"

namespace {

using namespace propfair;

AllocatorConfig uniform_config() {
  const DistributionSpec dist = DistributionSpec::uniform(0.0, 1.0);
  AllocatorConfig cfg;
  cfg.margin = margin_for(dist);
  cfg.mean = dist.mean();
  return cfg;
}

void BM_Theorem1Allocate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const auto inst = sample_instance(DistributionSpec::uniform(0.0, 1.0), n, k * n, 99);
  const auto cfg = uniform_config();
  for (auto _ : state) {
    auto outcome = theorem1_allocate(inst, cfg);
    benchmark::DoNotOptimize(outcome);
  }
}

void BM_Theorem2Allocate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  const auto inst = sample_instance(DistributionSpec::uniform(0.0, 1.0), n, m, 99);
  const auto cfg = uniform_config();
  for (auto _ : state) {
    auto outcome = theorem2_allocate(inst, cfg);
    benchmark::DoNotOptimize(outcome);
  }
}

void BM_ExistsProportional(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  const auto inst = sample_instance(DistributionSpec::uniform(0.0, 1.0), n, m, 5);
  for (auto _ : state) {
    auto result = exists_proportional(inst);
    benchmark::DoNotOptimize(result);
  }
}

}  // namespace

BENCHMARK(BM_Theorem1Allocate)->Args({10, 1})->Args({50, 2})->Args({200, 2});
BENCHMARK(BM_Theorem2Allocate)->Args({10, 100})->Args({20, 400});
BENCHMARK(BM_ExistsProportional)->Args({3, 9})->Args({4, 12})->Args({5, 15});

BENCHMARK_MAIN();
