#include "branchlens/metrics.hpp"

#include <algorithm>
#include <iterator>

#include "branchlens/csv.hpp"
#include "branchlens/error.hpp"

namespace branchlens {
namespace {

template <typename Set>
std::uint64_t intersection_size(const Set& a, const Set& b) {
  std::uint64_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

template <typename Set>
std::uint64_t union_size(const Set& a, const Set& b) {
  return a.size() + b.size() - intersection_size(a, b);
}

template <typename Set>
std::uint64_t symmetric_difference_size(const Set& a, const Set& b) {
  return a.size() + b.size() - 2 * intersection_size(a, b);
}

Ratio overlap(std::uint64_t inter, std::uint64_t uni) {
  return uni == 0 ? Ratio(1, 1) : Ratio(inter, uni);
}

std::string optional_fixed(const std::optional<Ratio>& r, int decimals) {
  return r ? r->fixed(decimals) : std::string();
}

}  // namespace

Ratio jaccard(const GraphPair& p) {
  return overlap(intersection_size(p.gt_nodes, p.tr_nodes) + intersection_size(p.gt_edges, p.tr_edges),
                 union_size(p.gt_nodes, p.tr_nodes) + union_size(p.gt_edges, p.tr_edges));
}

Ratio node_jaccard(const GraphPair& p) {
  return overlap(intersection_size(p.gt_nodes, p.tr_nodes), union_size(p.gt_nodes, p.tr_nodes));
}

Ratio edge_jaccard(const GraphPair& p) {
  return overlap(intersection_size(p.gt_edges, p.tr_edges), union_size(p.gt_edges, p.tr_edges));
}

std::uint64_t edit_count(const GraphPair& p) {
  return symmetric_difference_size(p.gt_nodes, p.tr_nodes) +
         symmetric_difference_size(p.gt_edges, p.tr_edges);
}

Ratio normalized_ged(const GraphPair& p) {
  const std::uint64_t size = p.gt_nodes.size() + p.gt_edges.size();
  if (size == 0) throw Error(ErrorCode::EmptyGroundTruth, "no ground-truth nodes or edges");
  return Ratio(edit_count(p), size);
}

Ratio block_coverage(const GraphPair& p) {
  if (p.gt_nodes.empty()) throw Error(ErrorCode::EmptyGroundTruth, "no ground-truth blocks");
  return Ratio(intersection_size(p.gt_nodes, p.tr_nodes), p.gt_nodes.size());
}

Ratio edge_coverage(const GraphPair& p) {
  if (p.gt_edges.empty()) throw Error(ErrorCode::EmptyGroundTruthEdges, "no ground-truth edges");
  return Ratio(intersection_size(p.gt_edges, p.tr_edges), p.gt_edges.size());
}

Ratio slowdown(Duration instrumented, Duration native) {
  if (native.count() <= 0) throw Error(ErrorCode::ZeroNativeTime, "native time must be positive");
  if (instrumented.count() < 0) throw Error(ErrorCode::ZeroNativeTime, "negative instrumented time");
  return Ratio(static_cast<std::uint64_t>(instrumented.count()),
               static_cast<std::uint64_t>(native.count()));
}

Ratio ips(std::uint64_t instruction_total, Duration elapsed) {
  if (elapsed.count() <= 0) throw Error(ErrorCode::ZeroElapsed, "elapsed time must be positive");
  constexpr wide_uint kNanosPerSecond = 1'000'000'000;
  return Ratio::from_wide(static_cast<wide_uint>(instruction_total) * kNanosPerSecond,
                          static_cast<wide_uint>(elapsed.count()));
}

MetricReport compute_report(const GraphPair& p) {
  MetricReport r;
  r.jaccard = jaccard(p);
  r.normalized_ged = normalized_ged(p);
  r.block_coverage = block_coverage(p);
  r.edge_coverage = edge_coverage(p);
  return r;
}

std::string to_text(const MetricReport& r) {
  std::string out = "jaccard=" + r.jaccard.fixed(4) + " nged=" + r.normalized_ged.fixed(4) +
                    " block_cov=" + r.block_coverage.fixed(4) + " edge_cov=" + r.edge_coverage.fixed(4);
  if (r.slowdown) out += " slowdown=" + r.slowdown->fixed(2);
  if (r.ips) out += " ips=" + r.ips->fixed(0);
  return out;
}

nlohmann::json to_json(const MetricReport& r) {
  auto ratio = [](const Ratio& x) {
    return nlohmann::json{{"value", x.to_double()}, {"exact", x.str()}};
  };
  nlohmann::json j = {{"workload", r.workload},
                      {"mode", r.mode},
                      {"jaccard", ratio(r.jaccard)},
                      {"nged", ratio(r.normalized_ged)},
                      {"block_cov", ratio(r.block_coverage)},
                      {"edge_cov", ratio(r.edge_coverage)}};
  j["slowdown"] = r.slowdown ? ratio(*r.slowdown) : nlohmann::json(nullptr);
  j["ips"] = r.ips ? ratio(*r.ips) : nlohmann::json(nullptr);
  return j;
}

std::string metric_csv_header() {
  return csv::row({"workload", "mode", "jaccard", "nged", "block_cov", "edge_cov", "slowdown", "ips"});
}

std::string to_csv_row(const MetricReport& r) {
  return csv::row({r.workload, r.mode, r.jaccard.fixed(4), r.normalized_ged.fixed(4),
                   r.block_coverage.fixed(4), r.edge_coverage.fixed(4), optional_fixed(r.slowdown, 2),
                   optional_fixed(r.ips, 0)});
}

}  // namespace branchlens
