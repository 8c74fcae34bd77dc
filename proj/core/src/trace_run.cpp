#include "branchlens/trace_run.hpp"

namespace branchlens {

TraceRunResult trace_run(const StaticCfg& cfg, const ExecutionScript& script,
                         SessionParams params, ExecutionLimits limits) {
  if (!params.user_region) params.user_region = cfg.user_region();

  TraceSession session(params);
  session.command(cmd::Start{});

  TraceRunResult result;
  result.oracle = execute(cfg, script, limits, &session);
  session.command(cmd::Stop{});

  result.lbr_snapshot = session.command(cmd::ReadLbr{}).records;
  if (params.mode == TraceMode::LbrOnly) {
    result.raw_trace = result.lbr_snapshot;
  } else {
    result.raw_trace = session.command(cmd::DrainBts{}).records;
  }
  result.stats = session.stats();
  return result;
}

}  // namespace branchlens
