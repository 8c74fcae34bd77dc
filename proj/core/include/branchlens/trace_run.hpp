#pragma once

#include <vector>

#include "branchlens/executor.hpp"
#include "branchlens/session.hpp"

namespace branchlens {

struct TraceRunResult {
  ExecutionOracle oracle;
  // BTS modes: all drained batches plus the final drain, in emission order.
  // LbrOnly: the final LBR snapshot, newest first.
  std::vector<BranchRecord> raw_trace;
  std::vector<BranchRecord> lbr_snapshot;  // newest first; empty in BtsOnly
  TracerStats stats;
};

// Runs execute() with a fresh session attached. A session without a user region
// inherits cfg.user_region().
TraceRunResult trace_run(const StaticCfg& cfg, const ExecutionScript& script,
                         SessionParams params, ExecutionLimits limits = {});

}  // namespace branchlens
