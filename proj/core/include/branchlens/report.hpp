#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "branchlens/harness.hpp"

namespace branchlens {

enum class ReportFormat { Csv, Json, Markdown };
std::optional<ReportFormat> parse_report_format(std::string_view text) noexcept;

// Stable column order shared by CSV and JSON output.
const std::vector<std::string>& report_columns();

// Throws Error(EmptyReport) for no rows, Error(UntaggedRow) when any row lacks provenance.
std::string emit_report(std::span<const AggregateRow> rows, ReportFormat format);
nlohmann::json report_json(std::span<const AggregateRow> rows);

// Writes report.csv, report.json and report.md into dir (created if missing).
void write_report_bundle(const std::filesystem::path& dir, std::span<const AggregateRow> rows);

// Published baselines, CSV with a "source" column that must read "paper-fixture".
// Throws Error(ParseError) with the offending line number.
std::vector<AggregateRow> load_baseline_fixtures(const std::filesystem::path& path);
std::vector<AggregateRow> parse_baseline_fixtures(std::string_view text);

const AggregateRow* find_row(std::span<const AggregateRow> rows, std::string_view group,
                             std::string_view workload, std::string_view mode);

}  // namespace branchlens
