#include <random>

#include <benchmark/benchmark.h>

#include "branchlens/program_gen.hpp"
#include "branchlens/trace_run.hpp"

using namespace branchlens;

namespace {

struct Workload {
  StaticCfg cfg;
  ExecutionScript script;
};

Workload make_workload(std::uint32_t blocks) {
  std::mt19937_64 rng(blocks);
  RandomProgramOptions po;
  po.min_blocks = po.max_blocks = blocks;
  RandomScriptOptions so;
  so.max_back_edge_occurrence = 20;
  so.syscall_site_probability = 0.05;
  StaticCfg cfg = build_cfg(random_program(rng, po));
  ExecutionScript script = random_script(cfg, rng, so);
  return {std::move(cfg), std::move(script)};
}

void BM_Execute(benchmark::State& state) {
  const Workload w = make_workload(static_cast<std::uint32_t>(state.range(0)));
  std::uint64_t blocks = 0;
  for (auto _ : state) {
    ExecutionOracle o = execute(w.cfg, w.script);
    blocks += o.executed_blocks.size();
    benchmark::DoNotOptimize(o);
  }
  state.counters["blocks/s"] = benchmark::Counter(static_cast<double>(blocks), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_Execute)->Arg(16)->Arg(50)->Arg(200);

void BM_TraceRun(benchmark::State& state) {
  const Workload w = make_workload(50);
  SessionParams p;
  p.mode = static_cast<TraceMode>(state.range(0));
  p.bts_capacity = 64;
  p.bts_threshold = 48;
  std::uint64_t records = 0;
  for (auto _ : state) {
    TraceRunResult r = trace_run(w.cfg, w.script, p);
    records += r.stats.records_emitted;
    benchmark::DoNotOptimize(r);
  }
  state.counters["records/s"] = benchmark::Counter(static_cast<double>(records), benchmark::Counter::kIsRate);
}
BENCHMARK(BM_TraceRun)
    ->Arg(static_cast<int>(TraceMode::LbrOnly))
    ->Arg(static_cast<int>(TraceMode::BtsOnly))
    ->Arg(static_cast<int>(TraceMode::Both));

}  // namespace
