#include <random>

#include <benchmark/benchmark.h>

#include "branchlens/metrics.hpp"

using namespace branchlens;

namespace {

GraphPair random_pair(std::int64_t nodes) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(nodes));
  GraphPair p;
  for (std::int64_t i = 0; i < nodes; ++i) {
    const Address a{static_cast<std::uint64_t>(i)};
    const Address b{rng() % static_cast<std::uint64_t>(nodes)};
    p.gt_nodes.insert(a);
    p.gt_edges.emplace(a, b);
    if (rng() % 50) {
      p.tr_nodes.insert(a);
      p.tr_edges.emplace(a, b);
    }
  }
  return p;
}

// Linear merge walks; large sizes drift upward from std::set node cache misses.
void BM_ComputeReport(benchmark::State& state) {
  const GraphPair p = random_pair(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(compute_report(p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ComputeReport)->RangeMultiplier(4)->Range(16, 16384)->Complexity(benchmark::oN);

}  // namespace
