#include <benchmark/benchmark.h>

#include "propfair/matching.hpp"
#include "propfair/rng.hpp"

namespace {

propfair::BipartiteGraph random_graph(std::size_t side, double edge_prob, std::uint64_t seed) {
  propfair::BipartiteGraph graph;
  graph.left_count = side;
  graph.right_count = side;
  graph.adjacency.resize(side);
  propfair::SplitMix64 rng(seed);
  for (std::size_t u = 0; u < side; ++u) {
    for (std::size_t v = 0; v < side; ++v) {
      if (rng.next_unit() < edge_prob) {
        graph.adjacency[u].push_back(static_cast<std::uint32_t>(v));
      }
    }
  }
  return graph;
}

void BM_MaximumMatching(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto graph = random_graph(side, 0.3, 17);
  for (auto _ : state) {
    auto matching = propfair::maximum_matching(graph);
    benchmark::DoNotOptimize(matching);
  }
  state.SetComplexityN(static_cast<std::int64_t>(side));
}

void BM_BruteForceMatching(benchmark::State& state) {
  const auto side = static_cast<std::size_t>(state.range(0));
  const auto graph = random_graph(side, 0.5, 23);
  for (auto _ : state) {
    benchmark::DoNotOptimize(propfair::brute_force_matching_size(graph));
  }
}

}  // namespace

BENCHMARK(BM_MaximumMatching)->Arg(8)->Arg(32)->Arg(128)->Arg(512)->Complexity();
BENCHMARK(BM_BruteForceMatching)->DenseRange(4, 10, 2);

BENCHMARK_MAIN();
