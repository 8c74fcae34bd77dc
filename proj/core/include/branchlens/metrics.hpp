#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "branchlens/graph.hpp"
#include "branchlens/ratio.hpp"

namespace branchlens {

using Duration = std::chrono::nanoseconds;

// Pooled node+edge Jaccard: (|N∩| + |E∩|) / (|N∪| + |E∪|); 1 when both graphs are empty.
Ratio jaccard(const GraphPair& p);
Ratio node_jaccard(const GraphPair& p);
Ratio edge_jaccard(const GraphPair& p);

// Insert/delete edit count (|N△| + |E△|) over ground-truth size |N_gt| + |E_gt|.
// Throws Error(EmptyGroundTruth).
Ratio normalized_ged(const GraphPair& p);
std::uint64_t edit_count(const GraphPair& p);

// |N_gt ∩ N_tr| / |N_gt|. Throws Error(EmptyGroundTruth).
Ratio block_coverage(const GraphPair& p);
// |E_gt ∩ E_tr| / |E_gt|. Throws Error(EmptyGroundTruthEdges).
Ratio edge_coverage(const GraphPair& p);

// T_instrumented / T_native. Throws Error(ZeroNativeTime).
Ratio slowdown(Duration instrumented, Duration native);
// Instructions per second. Throws Error(ZeroElapsed).
Ratio ips(std::uint64_t instruction_total, Duration elapsed);

struct MetricReport {
  std::string workload;
  std::string mode;
  Ratio jaccard;
  Ratio normalized_ged;
  Ratio block_coverage;
  Ratio edge_coverage;
  std::optional<Ratio> slowdown;
  std::optional<Ratio> ips;

  bool operator==(const MetricReport&) const = default;
};

// Throws the errors of the individual metrics.
MetricReport compute_report(const GraphPair& p);

// "jaccard=1.0000 nged=0.0000 block_cov=1.0000 edge_cov=1.0000[ slowdown=.. ips=..]"
std::string to_text(const MetricReport& r);
nlohmann::json to_json(const MetricReport& r);
// Columns: workload,mode,jaccard,nged,block_cov,edge_cov,slowdown,ips
std::string metric_csv_header();
std::string to_csv_row(const MetricReport& r);

}  // namespace branchlens
