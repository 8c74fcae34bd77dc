#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "branchlens/error.hpp"
#include "branchlens/harness.hpp"
#include "branchlens/metrics.hpp"
#include "branchlens/program_io.hpp"
#include "branchlens/reconstruct.hpp"
#include "branchlens/report.hpp"
#include "branchlens/subgraph_io.hpp"
#include "branchlens/trace_io.hpp"
#include "branchlens/trace_run.hpp"

namespace branchlens::cli {
namespace {

namespace fs = std::filesystem;

fs::path default_out_dir(const char* fallback) {
  if (const char* env = std::getenv("BRANCHLENS_OUT_DIR"); env && *env) return env;
  return fallback;
}

struct TraceArgs {
  std::string cfg;
  std::string script;
  std::string mode = "bts";
  std::optional<std::size_t> capacity;
  std::optional<std::size_t> threshold;
  std::uint32_t noise = kDefaultNoiseRecordsPerBoundary;
  bool no_sink = false;
  std::string out;
  std::string oracle_out;
  std::string format;
};

struct ReconstructArgs {
  std::string trace;
  std::string cfg;
  bool filter = false;
  bool window = false;
  std::string out;
  std::string dot;
};

struct MetricsArgs {
  std::string gt;
  std::string traced;
  std::optional<double> native_ms;
  std::optional<double> instrumented_ms;
  std::optional<std::uint64_t> instructions;
  std::optional<double> elapsed_ms;
  std::string workload;
  std::string mode;
  std::string format;
};

struct CampaignArgs {
  std::string campaign;
  std::string out;
  bool keep_traces = false;
  std::optional<std::size_t> jobs;
  std::string format;
};

struct FixturesArgs {
  std::string fixtures;
  std::string out;
  std::string format = "markdown";
};

Duration millis(double ms) { return Duration{static_cast<std::int64_t>(ms * 1e6 + 0.5)}; }

int do_trace(const TraceArgs& a, std::ostream& out) {
  SessionParams params;
  params.mode = *parse_trace_mode(a.mode);
  if (a.capacity) {
    if (params.mode != TraceMode::BtsOnly) params.lbr_capacity = *a.capacity;
    if (params.mode != TraceMode::LbrOnly) params.bts_capacity = *a.capacity;
  }
  params.bts_threshold = a.threshold;
  params.noise_records_per_boundary = a.noise;
  params.drain_sink = !a.no_sink;

  const StaticCfg cfg = load_cfg(a.cfg);
  const ExecutionScript script = load_script(a.script);
  TraceRunResult run = trace_run(cfg, script, params);

  // Trace files are always chronological.
  std::vector<BranchRecord> records = run.raw_trace;
  if (params.mode == TraceMode::LbrOnly) std::reverse(records.begin(), records.end());

  const fs::path path = a.out.empty() ? default_out_dir(".") / "run.btrace" : fs::path(a.out);
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  save_trace(path, records);
  if (!a.oracle_out.empty()) {
    write_text_file(a.oracle_out, to_json(subgraph_of(run.oracle)).dump(2) + "\n");
  }

  const TracerStats& s = run.stats;
  if (a.format == "json") {
    nlohmann::json j = {{"trace", path.string()},
                        {"records", records.size()},
                        {"branch_events", run.oracle.branch_events.size()},
                        {"instructions", run.oracle.instruction_total},
                        {"syscalls", run.oracle.syscall_count},
                        {"records_emitted", s.records_emitted},
                        {"records_dropped_gating", s.records_dropped_gating},
                        {"records_dropped_overflow", s.records_dropped_overflow},
                        {"drain_count", s.drain_count},
                        {"final_drain_records", s.final_drain_records},
                        {"noise_records", s.noise_records}};
    out << j.dump() << "\n";
  } else if (a.format == "csv") {
    out << "trace,records,branch_events,instructions,syscalls,records_emitted,records_dropped_gating,"
           "records_dropped_overflow,drain_count,final_drain_records,noise_records\r\n";
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\r\n", path.string(), records.size(),
                       run.oracle.branch_events.size(), run.oracle.instruction_total,
                       run.oracle.syscall_count, s.records_emitted, s.records_dropped_gating,
                       s.records_dropped_overflow, s.drain_count, s.final_drain_records, s.noise_records);
  } else {
    out << fmt::format(
        "wrote {} ({} records, mode {})\n  branch events {}  instructions {}  syscalls {}\n"
        "  emitted {}  dropped(gating) {}  dropped(overflow) {}  drains {}  final drain {}  noise {}\n",
        path.string(), records.size(), to_string(params.mode), run.oracle.branch_events.size(),
        run.oracle.instruction_total, run.oracle.syscall_count, s.records_emitted, s.records_dropped_gating,
        s.records_dropped_overflow, s.drain_count, s.final_drain_records, s.noise_records);
  }
  return 0;
}

int do_reconstruct(const ReconstructArgs& a, std::ostream& out) {
  const StaticCfg cfg = load_cfg(a.cfg);
  std::vector<BranchRecord> trace = load_trace(a.trace);
  if (a.filter) trace = filter_user_space(trace, cfg.user_region());
  ReconstructOptions options;
  if (a.window) options.completeness = TraceCompleteness::Window;
  const ExecutedSubgraph sub = reconstruct(trace, cfg, options);

  const std::string doc = to_json(sub).dump(2) + "\n";
  if (a.out.empty()) {
    out << doc;
  } else {
    write_text_file(a.out, doc);
  }
  if (!a.dot.empty()) write_text_file(a.dot, to_dot(sub, cfg.user_region()));
  return 0;
}

int do_metrics(const MetricsArgs& a, std::ostream& out) {
  const ExecutedSubgraph gt = load_subgraph(a.gt);
  const ExecutedSubgraph traced = load_subgraph(a.traced);
  MetricReport report = compute_report(pair_of(gt, traced));
  report.workload = a.workload;
  report.mode = a.mode;
  if (a.native_ms && a.instrumented_ms) report.slowdown = slowdown(millis(*a.instrumented_ms), millis(*a.native_ms));
  if (a.instructions && a.elapsed_ms) report.ips = ips(*a.instructions, millis(*a.elapsed_ms));

  if (a.format == "json") {
    out << to_json(report).dump() << "\n";
  } else if (a.format == "csv") {
    out << metric_csv_header() << to_csv_row(report);
  } else {
    out << to_text(report) << "\n";
  }
  return 0;
}

int do_campaign(const CampaignArgs& a, std::ostream& out) {
  Campaign campaign = load_campaign(a.campaign);
  const fs::path dir = a.out.empty() ? default_out_dir("branchlens-out") : fs::path(a.out);
  if (a.keep_traces) campaign.trace_dir = dir / "traces";
  if (a.jobs) campaign.jobs = std::max<std::size_t>(1, *a.jobs);
  const auto rows = run_campaign(campaign);
  write_report_bundle(dir, rows);
  if (!a.format.empty()) {
    out << emit_report(rows, *parse_report_format(a.format));
  } else {
    out << emit_report(rows, ReportFormat::Markdown);
    out << fmt::format("\nwrote {}/report.{{csv,json,md}}\n", dir.string());
  }
  return 0;
}

int do_fixtures(const FixturesArgs& a, std::ostream& out) {
  const auto rows = load_baseline_fixtures(a.fixtures);
  if (!a.out.empty()) write_report_bundle(a.out, rows);
  out << emit_report(rows, *parse_report_format(a.format));
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"branchlens: emulated LBR/BTS branch tracing and CFG reconstruction"};
  app.name("branchlens");
  app.require_subcommand(1, 1);

  TraceArgs trace_args;
  auto* trace = app.add_subcommand("trace", "Run a program under the emulated tracer and write a .btrace");
  trace->add_option("--cfg", trace_args.cfg, "Program JSON")->required()->check(CLI::ExistingFile);
  trace->add_option("--script", trace_args.script, "Execution script JSON")->required()->check(CLI::ExistingFile);
  trace->add_option("--mode", trace_args.mode, "lbr | bts | both")
      ->check(CLI::IsMember({"lbr", "bts", "both"}))
      ->capture_default_str();
  trace->add_option("--capacity", trace_args.capacity, "Capacity of the active buffer(s) (lbr 16, bts 1024)");
  trace->add_option("--threshold", trace_args.threshold, "BTS interrupt threshold (capacity - 64, min 1)");
  trace->add_option("--noise", trace_args.noise, "Noise records per syscall boundary")->capture_default_str();
  trace->add_flag("--no-sink", trace_args.no_sink, "Do not drain BTS at the threshold (records overflow)");
  trace->add_option("--out", trace_args.out, "Output trace (.btrace or .btrace.jsonl); default $BRANCHLENS_OUT_DIR/run.btrace");
  trace->add_option("--oracle-out", trace_args.oracle_out, "Write the ground-truth subgraph JSON here");
  trace->add_option("--format", trace_args.format, "Stats on stdout as json | csv")->check(CLI::IsMember({"json", "csv"}));

  ReconstructArgs rec_args;
  auto* rec = app.add_subcommand("reconstruct", "Rebuild the executed subgraph from a trace");
  rec->add_option("--trace", rec_args.trace, "Trace file")->required()->check(CLI::ExistingFile);
  rec->add_option("--cfg", rec_args.cfg, "Program JSON")->required()->check(CLI::ExistingFile);
  rec->add_flag("--filter", rec_args.filter, "Drop records outside the program's user region first");
  rec->add_flag("--window", rec_args.window, "Trace is a partial window (LBR); do not anchor at entry");
  rec->add_option("--out", rec_args.out, "Subgraph JSON output (default stdout)");
  rec->add_option("--dot", rec_args.dot, "Also write a Graphviz DOT file");
  std::string rec_format;
  rec->add_option("--format", rec_format, "json")->check(CLI::IsMember({"json"}));

  MetricsArgs met_args;
  auto* met = app.add_subcommand("metrics", "Compare a traced subgraph against ground truth");
  met->add_option("--gt", met_args.gt, "Ground-truth subgraph JSON")->required()->check(CLI::ExistingFile);
  met->add_option("--traced", met_args.traced, "Traced subgraph JSON")->required()->check(CLI::ExistingFile);
  met->add_option("--native-ms", met_args.native_ms, "Native wall-clock time (ms)");
  met->add_option("--instrumented-ms", met_args.instrumented_ms, "Instrumented wall-clock time (ms)");
  met->add_option("--instructions", met_args.instructions, "Executed instruction count");
  met->add_option("--elapsed-ms", met_args.elapsed_ms, "Elapsed time for IPS (ms)");
  met->add_option("--workload", met_args.workload, "Label for csv/json output");
  met->add_option("--mode", met_args.mode, "Label for csv/json output");
  met->add_option("--format", met_args.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  CampaignArgs camp_args;
  auto* camp = app.add_subcommand("campaign", "Run a benchmark campaign and write report.{csv,json,md}");
  camp->add_option("--campaign", camp_args.campaign, "Campaign JSON")->required()->check(CLI::ExistingFile);
  camp->add_option("--out", camp_args.out, "Output directory; default $BRANCHLENS_OUT_DIR or ./branchlens-out");
  camp->add_flag("--keep-traces", camp_args.keep_traces, "Write every run's trace under <out>/traces");
  camp->add_option("--jobs", camp_args.jobs, "Parallel cells");
  camp->add_option("--format", camp_args.format, "Report on stdout as csv | json | markdown")
      ->check(CLI::IsMember({"csv", "json", "markdown"}));

  FixturesArgs fix_args;
  auto* fix = app.add_subcommand("fixtures", "Render published baseline fixtures as a report");
  fix->add_option("--fixtures", fix_args.fixtures, "Fixture CSV")->required()->check(CLI::ExistingFile);
  fix->add_option("--out", fix_args.out, "Also write report.{csv,json,md} here");
  fix->add_option("--format", fix_args.format, "csv | json | markdown")
      ->check(CLI::IsMember({"csv", "json", "markdown"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto used = app.get_subcommands();
    err << (used.empty() ? app.help() : used.front()->help());
    return 2;
  }

  try {
    if (*trace) return do_trace(trace_args, out);
    if (*rec) return do_reconstruct(rec_args, out);
    if (*met) return do_metrics(met_args, out);
    if (*camp) return do_campaign(camp_args, out);
    if (*fix) return do_fixtures(fix_args, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "IoError(" << e.what() << ")\n";
    return 1;
  }
  return 2;
}

}  // namespace branchlens::cli
