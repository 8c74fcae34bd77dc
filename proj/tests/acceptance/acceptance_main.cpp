// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero if
// any criterion fails. All comparisons are exact; time limits are wall-clock.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "branchlens/csv.hpp"
#include "branchlens/error.hpp"
#include "branchlens/harness.hpp"
#include "branchlens/metrics.hpp"
#include "branchlens/reconstruct.hpp"
#include "branchlens/report.hpp"
#include "branchlens/trace_run.hpp"
#include "oracles.hpp"
#include "programs.hpp"

using namespace branchlens;
using namespace branchlens::testing;
namespace fs = std::filesystem;

namespace {

const fs::path kData{BRANCHLENS_DATA_DIR};

constexpr std::uint64_t kRandomCases = 200;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::uint64_t checked = 0;

  void fail(std::string why) {
    if (pass) detail = std::move(why);
    pass = false;
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_s;  // 0: no limit
  std::function<Outcome()> body;
};

RandomCase case_for(std::uint64_t seed, double syscall_sites = 0.15) {
  return shaped_case(seed, syscall_sites);
}

Outcome lbr_window() {
  Outcome o;
  std::size_t longest = 0;
  std::size_t overflowing = 0;
  for (std::uint64_t seed = 0; seed < kRandomCases; ++seed) {
    const RandomCase c = case_for(1000 + seed);
    const std::uint32_t noise = static_cast<std::uint32_t>(seed % 3);
    EventRecorder rec;
    execute(c.cfg, c.script, {}, &rec);
    const auto gated = expected_gated_stream(rec.events, c.cfg.user_region(), noise);
    for (std::size_t cap : {4u, 8u, 16u, 32u}) {
      SessionParams p;
      p.mode = TraceMode::LbrOnly;
      p.lbr_capacity = cap;
      p.noise_records_per_boundary = noise;
      const TraceRunResult r = trace_run(c.cfg, c.script, p);
      const std::size_t keep = std::min(cap, gated.size());
      std::vector<BranchRecord> want(gated.end() - static_cast<std::ptrdiff_t>(keep), gated.end());
      std::reverse(want.begin(), want.end());
      ++o.checked;
      if (r.lbr_snapshot != want) o.fail(fmt::format("seed {} capacity {}", 1000 + seed, cap));
    }
    longest = std::max(longest, gated.size());
    if (gated.size() > 32) ++overflowing;
  }
  if (o.pass) o.detail = fmt::format("longest stream {}, {} cases overflow 32 entries", longest, overflowing);
  return o;
}

Outcome bts_lossless() {
  Outcome o;
  const std::vector<std::pair<std::size_t, std::vector<std::size_t>>> configs = {
      {1, {1}}, {2, {1, 2}}, {8, {1, 2, 3, 4, 5, 6, 7, 8}}, {1024, {1, 2, 7, 64, 512, 960, 1024}}};
  std::size_t longest = 0;
  for (std::uint64_t seed = 0; seed < kRandomCases; ++seed) {
    const RandomCase c = case_for(2000 + seed);
    const std::uint32_t noise = static_cast<std::uint32_t>(seed % 3);
    EventRecorder rec;
    execute(c.cfg, c.script, {}, &rec);
    const auto gated = expected_gated_stream(rec.events, c.cfg.user_region(), noise);
    longest = std::max(longest, gated.size());
    for (const auto& [cap, thresholds] : configs) {
      for (std::size_t thr : thresholds) {
        SessionParams p;
        p.mode = TraceMode::BtsOnly;
        p.bts_capacity = cap;
        p.bts_threshold = thr;
        p.noise_records_per_boundary = noise;
        const TraceRunResult r = trace_run(c.cfg, c.script, p);
        ++o.checked;
        if (r.raw_trace != gated) {
          o.fail(fmt::format("seed {} capacity {} threshold {}", 2000 + seed, cap, thr));
        }
      }
    }
  }
  if (o.pass) o.detail = fmt::format("longest stream {}", longest);
  return o;
}

Outcome round_trip() {
  Outcome o;
  std::uint32_t largest = 0;
  for (std::uint64_t seed = 0; seed < kRandomCases; ++seed) {
    const RandomCase c = shaped_case(3000 + seed, 0.0);
    largest = std::max<std::uint32_t>(largest, static_cast<std::uint32_t>(c.cfg.blocks().size()));
    SessionParams p;
    p.mode = TraceMode::BtsOnly;
    p.bts_capacity = 1024;
    p.noise_records_per_boundary = 0;
    const TraceRunResult r = trace_run(c.cfg, c.script, p);
    const ExecutedSubgraph g = reconstruct(filter_user_space(r.raw_trace, c.cfg.user_region()), c.cfg);
    const NodeSet want_nodes(r.oracle.executed_blocks.begin(), r.oracle.executed_blocks.end());
    ++o.checked;
    if (g.nodes != want_nodes || g.edges != r.oracle.executed_edges) {
      o.fail(fmt::format("seed {}", 3000 + seed));
    }
  }
  if (o.pass) o.detail = fmt::format("largest program {} blocks", largest);
  return o;
}

Outcome filter_restores() {
  Outcome o;
  const Ratio one(1, 1);
  for (std::uint64_t seed = 0; seed < kRandomCases; ++seed) {
    RandomCase c = case_for(4000 + seed, 0.1);
    c.script.syscall_sites.insert(c.cfg.entry());
    for (std::uint32_t noise : {1u, 2u, 4u}) {
      SessionParams p;
      p.mode = TraceMode::BtsOnly;
      p.bts_capacity = 256;
      p.bts_threshold = 192;
      p.noise_records_per_boundary = noise;
      const TraceRunResult r = trace_run(c.cfg, c.script, p);
      const GraphPair raw = project_to_ground_truth(reconstruct(r.raw_trace, c.cfg), r.oracle);
      const GraphPair clean = project_to_ground_truth(
          reconstruct(filter_user_space(r.raw_trace, c.cfg.user_region()), c.cfg), r.oracle);
      ++o.checked;
      const bool ok = r.oracle.syscall_count >= 1 && jaccard(raw) < one && jaccard(clean) == one &&
                      normalized_ged(clean) == Ratio(0, 1) && block_coverage(clean) == one &&
                      edge_coverage(clean) == one;
      if (!ok) o.fail(fmt::format("seed {} noise {}", 4000 + seed, noise));
    }
  }
  return o;
}

// Every graph whose nodes are a subset of `labels` and whose edges are a subset of
// the allowed pairs among present nodes.
std::vector<std::pair<NodeSet, EdgeSet>> all_graphs(std::uint64_t labels, bool self_loops) {
  std::vector<std::pair<NodeSet, EdgeSet>> out;
  for (std::uint64_t nmask = 0; nmask < (1u << labels); ++nmask) {
    NodeSet nodes;
    for (std::uint64_t i = 0; i < labels; ++i) {
      if (nmask >> i & 1) nodes.insert(Address{i});
    }
    std::vector<EdgePair> pool;
    for (Address a : nodes) {
      for (Address b : nodes) {
        if (self_loops || a != b) pool.emplace_back(a, b);
      }
    }
    for (std::uint64_t emask = 0; emask < (1u << pool.size()); ++emask) {
      EdgeSet edges;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        if (emask >> i & 1) edges.insert(pool[i]);
      }
      out.emplace_back(nodes, edges);
    }
  }
  return out;
}

void check_pair(const GraphPair& p, Outcome& o) {
  ++o.checked;
  const Fraction j = direct_jaccard(p);
  if (!equals(jaccard(p), j.num, j.den)) return o.fail("jaccard mismatch");
  if (p.gt_nodes.empty() && p.gt_edges.empty()) return;
  if (!equals(normalized_ged(p), brute_force_edits(p), p.gt_nodes.size() + p.gt_edges.size())) {
    return o.fail(fmt::format("ged mismatch, {} gt nodes", p.gt_nodes.size()));
  }
  if (!p.gt_nodes.empty()) {
    const Fraction b = direct_block_coverage(p);
    if (!equals(block_coverage(p), b.num, b.den)) return o.fail("block coverage mismatch");
  }
  if (!p.gt_edges.empty()) {
    const Fraction e = direct_edge_coverage(p);
    if (!equals(edge_coverage(p), e.num, e.den)) return o.fail("edge coverage mismatch");
  }
}

Outcome metric_oracles() {
  Outcome o;
  // Exhaustive: all pairs over 3 labels without self-loops, and over 2 labels with them.
  for (const auto& [labels, loops] : {std::pair<std::uint64_t, bool>{3, false}, {2, true}}) {
    const auto graphs = all_graphs(labels, loops);
    for (const auto& gt : graphs) {
      for (const auto& tr : graphs) check_pair(GraphPair{gt.first, gt.second, tr.first, tr.second}, o);
    }
  }
  // Sampled: 10,000 pairs over 5 labels, self-loops allowed, up to 4 edges per graph.
  std::mt19937_64 rng(5005);
  auto sample = [&](NodeSet& nodes, EdgeSet& edges) {
    for (std::uint64_t i = 0; i < 5; ++i) {
      if (rng() & 1) nodes.insert(Address{i});
    }
    if (nodes.empty()) return;
    const std::vector<Address> ns(nodes.begin(), nodes.end());
    const std::uint64_t count = rng() % 5;
    for (std::uint64_t k = 0; k < count; ++k) edges.emplace(ns[rng() % ns.size()], ns[rng() % ns.size()]);
  };
  for (int i = 0; i < 10000; ++i) {
    GraphPair p;
    sample(p.gt_nodes, p.gt_edges);
    sample(p.tr_nodes, p.tr_edges);
    check_pair(p, o);
  }
  return o;
}

Outcome worked_example() {
  // N_gt ∩ N_tr = {A,B,C} (3), N_gt ∪ N_tr = {A,B,C,K} (4)
  // E_gt ∩ E_tr = {(A,B)} (1), E_gt ∪ E_tr = {(A,B),(B,C),(B,K),(K,C)} (4)
  // jaccard = (3+1)/(4+4) = 1/2
  // edits = K + (B,C) + (B,K) + (K,C) = 4, over |N_gt|+|E_gt| = 5 -> 4/5
  // block coverage 3/3, edge coverage 1/2
  const Address A{0xa}, B{0xb}, C{0xc}, K{0xf};
  const GraphPair p{{A, B, C}, {{A, B}, {B, C}}, {A, B, C, K}, {{A, B}, {B, K}, {K, C}}};
  Outcome o;
  o.checked = 4;
  if (jaccard(p) != Ratio(1, 2)) o.fail("jaccard " + jaccard(p).str());
  if (normalized_ged(p) != Ratio(4, 5)) o.fail("nged " + normalized_ged(p).str());
  if (block_coverage(p) != Ratio(1, 1)) o.fail("block coverage " + block_coverage(p).str());
  if (edge_coverage(p) != Ratio(1, 2)) o.fail("edge coverage " + edge_coverage(p).str());
  return o;
}

std::string column(const std::vector<csv::Record>& recs, std::size_t row, std::string_view name) {
  const auto& cols = report_columns();
  return recs.at(row).fields.at(std::find(cols.begin(), cols.end(), name) - cols.begin());
}

Outcome fixture_round_trip() {
  Outcome o;
  const auto rows = load_baseline_fixtures(kData / "fixtures" / "published_baselines.csv");
  const std::vector<std::tuple<std::string, std::string, std::uint64_t>> factors = {
      {"ls", "pin", 118},  {"ls", "dynamorio", 13},  {"dd", "pin", 45},   {"dd", "dynamorio", 5},
      {"echo", "pin", 127}, {"echo", "dynamorio", 14}, {"sort", "pin", 67}, {"sort", "dynamorio", 7},
      {"wc", "pin", 70},   {"wc", "dynamorio", 7},   {"cat", "pin", 71},  {"cat", "dynamorio", 8}};
  auto to_ns = [](double ms) { return Duration(std::llround(ms * 1e6)); };
  for (const auto& [workload, mode, want] : factors) {
    ++o.checked;
    const AggregateRow* row = find_row(rows, "overhead", workload, mode);
    if (!row || !row->native_ms || !row->instrumented_ms) {
      o.fail(fmt::format("{} {} missing", workload, mode));
      continue;
    }
    const Ratio s = slowdown(to_ns(*row->instrumented_ms), to_ns(*row->native_ms));
    if (s.round() != want) o.fail(fmt::format("{} {}: {} rounds to {}", workload, mode, s.str(), s.round()));
  }

  const AggregateRow* libiht = find_row(rows, "accuracy", "benign-mean", "libiht");
  if (!libiht) {
    o.fail("accuracy row missing");
    return o;
  }
  const std::vector<AggregateRow> one{*libiht};
  const auto recs = csv::parse(emit_report(one, ReportFormat::Csv));
  for (const auto& [name, want] : std::vector<std::pair<std::string, std::string>>{
           {"jaccard_mean", "0.9836"}, {"nged_mean", "0.0231"}, {"block_cov_mean", "0.9992"},
           {"edge_cov_mean", "0.9948"}}) {
    ++o.checked;
    const std::string got = column(recs, 1, name);
    if (got != want) o.fail(fmt::format("{} rendered {}", name, got));
  }
  return o;
}

std::string csv_without(const std::string& text, std::string_view drop) {
  const auto recs = csv::parse(text);
  const auto& header = recs.at(0).fields;
  const auto at = static_cast<std::size_t>(std::find(header.begin(), header.end(), drop) - header.begin());
  std::string out;
  for (const auto& r : recs) {
    std::vector<std::string> fields;
    for (std::size_t i = 0; i < r.fields.size(); ++i) {
      if (i != at) fields.push_back(r.fields[i]);
    }
    out += csv::row(fields);
  }
  return out;
}

Outcome campaign_determinism() {
  Outcome o;
  const Campaign c = load_campaign(kData / "demo" / "campaign.json");
  const auto dir = fs::temp_directory_path() / "branchlens_acceptance";
  std::vector<std::string> reports;
  for (int run = 0; run < 2; ++run) {
    const auto out = dir / fmt::format("run{}", run);
    fs::remove_all(out);
    write_report_bundle(out, run_campaign(c));
    std::ifstream in(out / "report.csv", std::ios::binary);
    reports.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  fs::remove_all(dir);
  o.checked = 2;
  if (reports[0].empty()) o.fail("empty report");
  if (csv_without(reports[0], "sim_elapsed_ms") != csv_without(reports[1], "sim_elapsed_ms")) {
    o.fail("report.csv differs outside sim_elapsed_ms");
  }
  if (o.pass) o.detail = fmt::format("{} workloads x {} modes x {} reps", c.workloads.size(), c.modes.size(), c.repetitions);
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "LBR window property", 10.0, lbr_window},
      {2, "BTS losslessness", 10.0, bts_lossless},
      {3, "round-trip exactness without noise", 30.0, round_trip},
      {4, "user-space filter restores exactness", 0.0, filter_restores},
      {5, "metric oracle equivalence", 0.0, metric_oracles},
      {6, "hand-derived worked example", 0.0, worked_example},
      {7, "published baseline fixture round-trip", 0.0, fixture_round_trip},
      {8, "campaign determinism", 60.0, campaign_determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && c.limit_s > 0 && secs >= c.limit_s) o.fail(fmt::format("exceeded {:.0f} s", c.limit_s));
    if (!o.pass) ++failures;
    std::string line = fmt::format("{} [{}] {}: {} checks, {:.2f} s", o.pass ? "PASS" : "FAIL", c.id,
                                   c.name, o.checked, secs);
    if (c.limit_s > 0) line += fmt::format(" (limit {:.0f} s)", c.limit_s);
    if (!o.detail.empty()) line += " - " + o.detail;
    std::puts(line.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
