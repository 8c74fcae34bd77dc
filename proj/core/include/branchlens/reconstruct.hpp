#pragma once

#include <span>
#include <vector>

#include "branchlens/executor.hpp"
#include "branchlens/graph.hpp"
#include "branchlens/program.hpp"

namespace branchlens {

struct ExecutedSubgraph {
  NodeSet nodes;
  EdgeSet edges;  // multiplicity collapsed
  std::vector<Address> block_sequence;

  bool operator==(const ExecutedSubgraph&) const = default;
};

enum class TraceCompleteness {
  // Every taken branch since program entry is present (BTS capture). The path is
  // anchored at cfg.entry.
  FromEntry,
  // Only a suffix of the run is present (LBR snapshot). The path starts at the first
  // record's source block.
  Window,
};

struct ReconstructOptions {
  TraceCompleteness completeness = TraceCompleteness::FromEntry;
};

// Keeps records whose source and target both lie in [lo, hi), order preserved.
std::vector<BranchRecord> filter_user_space(std::span<const BranchRecord> trace, AddressRange user_region);

// Rebuilds the executed path from a time-ordered trace, re-deriving fall-through
// transitions between records and after the last one. Addresses outside the user
// region become synthetic nodes keyed by their raw address.
// Throws Error(UnmappedAddress | AmbiguousFallThrough | MidBlockTarget).
ExecutedSubgraph reconstruct(std::span<const BranchRecord> trace, const StaticCfg& cfg,
                             ReconstructOptions options = {});

// Subgraph view of the reference interpreter's path.
ExecutedSubgraph subgraph_of(const ExecutionOracle& oracle);

GraphPair project_to_ground_truth(const ExecutedSubgraph& traced, const ExecutionOracle& oracle);
GraphPair pair_of(const ExecutedSubgraph& gt, const ExecutedSubgraph& traced);

}  // namespace branchlens
