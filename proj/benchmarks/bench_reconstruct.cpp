#include <random>

#include <benchmark/benchmark.h>

#include "branchlens/program_gen.hpp"
#include "branchlens/reconstruct.hpp"
#include "branchlens/trace_io.hpp"
#include "branchlens/trace_run.hpp"

using namespace branchlens;

namespace {

struct Captured {
  StaticCfg cfg;
  std::vector<BranchRecord> trace;
};

Captured capture(std::uint32_t blocks, std::uint32_t noise) {
  std::mt19937_64 rng(7 * blocks + noise);
  RandomProgramOptions po;
  po.min_blocks = po.max_blocks = blocks;
  RandomScriptOptions so;
  so.max_back_edge_occurrence = 20;
  so.syscall_site_probability = 0.05;
  StaticCfg cfg = build_cfg(random_program(rng, po));
  const ExecutionScript script = random_script(cfg, rng, so);
  SessionParams p;
  p.noise_records_per_boundary = noise;
  std::vector<BranchRecord> trace = trace_run(cfg, script, p).raw_trace;
  return {std::move(cfg), std::move(trace)};
}

void BM_Reconstruct(benchmark::State& state) {
  const Captured c = capture(static_cast<std::uint32_t>(state.range(0)), 0);
  for (auto _ : state) benchmark::DoNotOptimize(reconstruct(c.trace, c.cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.trace.size()));
}
BENCHMARK(BM_Reconstruct)->Arg(16)->Arg(50)->Arg(200);

void BM_FilterThenReconstruct(benchmark::State& state) {
  const Captured c = capture(50, static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(reconstruct(filter_user_space(c.trace, c.cfg.user_region()), c.cfg));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.trace.size()));
}
BENCHMARK(BM_FilterThenReconstruct)->Arg(0)->Arg(2)->Arg(8);

void BM_BtraceRoundTrip(benchmark::State& state) {
  const Captured c = capture(200, 2);
  for (auto _ : state) benchmark::DoNotOptimize(decode_btrace(encode_btrace(c.trace)));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(c.trace.size() * kBtraceRecordSize));
}
BENCHMARK(BM_BtraceRoundTrip);

}  // namespace
