#include "branchlens/report.hpp"

#include <fmt/format.h>

#include "branchlens/csv.hpp"
#include "branchlens/error.hpp"
#include "branchlens/program_io.hpp"

namespace branchlens {
namespace {

using nlohmann::json;

std::string metric(const std::optional<Stat>& s) { return s ? fmt::format("{:.4f}", s->mean) : ""; }
std::string metric_std(const std::optional<Stat>& s) {
  return s && s->std ? fmt::format("{:.4f}", *s->std) : "";
}
std::string factor(const std::optional<Stat>& s) { return s ? fmt::format("{:.2f}", s->mean) : ""; }
std::string factor_std(const std::optional<Stat>& s) {
  return s && s->std ? fmt::format("{:.2f}", *s->std) : "";
}
std::string count(const std::optional<std::uint64_t>& v) { return v ? fmt::format("{}", *v) : ""; }
std::string millis(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : ""; }
std::string elapsed(const std::optional<Stat>& s) { return s ? fmt::format("{:.3f}", s->mean) : ""; }

std::vector<std::string> cells(const AggregateRow& r) {
  return {std::string(to_string(r.source)),
          r.group,
          r.workload,
          r.args_label,
          r.mode,
          r.repetitions ? fmt::format("{}", r.repetitions) : "",
          metric(r.jaccard),
          metric_std(r.jaccard),
          metric(r.nged),
          metric_std(r.nged),
          metric(r.block_cov),
          metric_std(r.block_cov),
          metric(r.edge_cov),
          metric_std(r.edge_cov),
          metric(r.raw_jaccard),
          metric_std(r.raw_jaccard),
          metric(r.raw_nged),
          metric_std(r.raw_nged),
          metric(r.raw_block_cov),
          metric(r.raw_edge_cov),
          millis(r.native_ms),
          millis(r.instrumented_ms),
          factor(r.slowdown),
          factor_std(r.slowdown),
          count(r.instructions),
          count(r.syscalls),
          count(r.drain_count),
          count(r.noise_records),
          count(r.dropped_overflow),
          elapsed(r.sim_elapsed_ms)};
}

void check_rows(std::span<const AggregateRow> rows) {
  if (rows.empty()) throw Error(ErrorCode::EmptyReport, "no rows");
  for (const auto& r : rows) {
    if (r.source == Provenance::Untagged) {
      throw Error(ErrorCode::UntaggedRow, fmt::format("workload '{}', mode '{}'", r.workload, r.mode));
    }
  }
}

json stat_json(const std::optional<Stat>& s) {
  if (!s) return nullptr;
  return {{"mean", s->mean}, {"std", s->std ? json(*s->std) : json(nullptr)}};
}

std::string markdown_cell(const std::optional<Stat>& s, int decimals) {
  if (!s) return "n/a";
  if (!s->std) return fmt::format("{:.{}f}", s->mean, decimals);
  return fmt::format("{:.{}f} ± {:.{}f}", s->mean, decimals, *s->std, decimals);
}

std::string markdown_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::optional<ReportFormat> parse_report_format(std::string_view text) noexcept {
  if (text == "csv") return ReportFormat::Csv;
  if (text == "json") return ReportFormat::Json;
  if (text == "markdown" || text == "md") return ReportFormat::Markdown;
  return std::nullopt;
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> columns = {
      "source",         "group",           "workload",      "args",           "mode",
      "reps",           "jaccard_mean",    "jaccard_std",   "nged_mean",      "nged_std",
      "block_cov_mean", "block_cov_std",   "edge_cov_mean", "edge_cov_std",   "raw_jaccard_mean",
      "raw_jaccard_std", "raw_nged_mean",  "raw_nged_std",  "raw_block_cov_mean", "raw_edge_cov_mean",
      "native_ms",      "instrumented_ms", "slowdown_mean", "slowdown_std",   "instructions",
      "syscalls",       "drain_count",     "noise_records", "dropped_overflow", "sim_elapsed_ms"};
  return columns;
}

json report_json(std::span<const AggregateRow> rows) {
  check_rows(rows);
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"source", to_string(r.source)},
                   {"group", r.group},
                   {"workload", r.workload},
                   {"args", r.args_label},
                   {"mode", r.mode},
                   {"reps", r.repetitions},
                   {"jaccard", stat_json(r.jaccard)},
                   {"nged", stat_json(r.nged)},
                   {"block_cov", stat_json(r.block_cov)},
                   {"edge_cov", stat_json(r.edge_cov)},
                   {"raw_jaccard", stat_json(r.raw_jaccard)},
                   {"raw_nged", stat_json(r.raw_nged)},
                   {"raw_block_cov", stat_json(r.raw_block_cov)},
                   {"raw_edge_cov", stat_json(r.raw_edge_cov)},
                   {"native_ms", r.native_ms ? json(*r.native_ms) : json(nullptr)},
                   {"instrumented_ms", r.instrumented_ms ? json(*r.instrumented_ms) : json(nullptr)},
                   {"slowdown", stat_json(r.slowdown)},
                   {"instructions", r.instructions ? json(*r.instructions) : json(nullptr)},
                   {"syscalls", r.syscalls ? json(*r.syscalls) : json(nullptr)},
                   {"drain_count", r.drain_count ? json(*r.drain_count) : json(nullptr)},
                   {"noise_records", r.noise_records ? json(*r.noise_records) : json(nullptr)},
                   {"dropped_overflow", r.dropped_overflow ? json(*r.dropped_overflow) : json(nullptr)},
                   {"sim_elapsed_ms", stat_json(r.sim_elapsed_ms)},
                   {"sim_ips", stat_json(r.sim_ips)}});
  }
  return out;
}

std::string emit_report(std::span<const AggregateRow> rows, ReportFormat format) {
  check_rows(rows);
  switch (format) {
    case ReportFormat::Csv: {
      std::string out = csv::row(report_columns());
      for (const auto& r : rows) out += csv::row(cells(r));
      return out;
    }
    case ReportFormat::Json:
      return report_json(rows).dump(2) + "\n";
    case ReportFormat::Markdown: {
      std::string out =
          "| Source | Group | Workload | Mode | Jaccard | Normalized GED | Block Coverage | "
          "Edge Coverage | Raw Jaccard | Slowdown | sim_elapsed (ms) | sim IPS |\n"
          "|---|---|---|---|---:|---:|---:|---:|---:|---:|---:|---:|\n";
      for (const auto& r : rows) {
        out += fmt::format(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n", to_string(r.source),
            markdown_escape(r.group), markdown_escape(r.workload), markdown_escape(r.mode),
            markdown_cell(r.jaccard, 4), markdown_cell(r.nged, 4), markdown_cell(r.block_cov, 4),
            markdown_cell(r.edge_cov, 4), markdown_cell(r.raw_jaccard, 4), markdown_cell(r.slowdown, 2),
            markdown_cell(r.sim_elapsed_ms, 3),
            r.sim_ips ? fmt::format("{:.3e}", r.sim_ips->mean) : std::string("n/a"));
      }
      return out;
    }
  }
  return {};
}

void write_report_bundle(const std::filesystem::path& dir, std::span<const AggregateRow> rows) {
  std::filesystem::create_directories(dir);
  write_text_file(dir / "report.csv", emit_report(rows, ReportFormat::Csv));
  write_text_file(dir / "report.json", emit_report(rows, ReportFormat::Json));
  write_text_file(dir / "report.md", emit_report(rows, ReportFormat::Markdown));
}

const AggregateRow* find_row(std::span<const AggregateRow> rows, std::string_view group,
                             std::string_view workload, std::string_view mode) {
  for (const auto& r : rows) {
    if (r.group == group && r.workload == workload && r.mode == mode) return &r;
  }
  return nullptr;
}

}  // namespace branchlens
