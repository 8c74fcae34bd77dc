#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <set>

#include <fmt/format.h>

#include "branchlens/csv.hpp"
#include "branchlens/error.hpp"
#include "branchlens/metrics.hpp"
#include "branchlens/report.hpp"

namespace branchlens {
namespace {

const std::set<std::string, std::less<>> kKnownColumns = {
    "source",        "group",         "workload",     "args",          "mode",
    "reps",          "jaccard_mean",  "jaccard_std",  "nged_mean",     "nged_std",
    "block_cov_mean", "block_cov_std", "edge_cov_mean", "edge_cov_std", "native_ms",
    "instrumented_ms", "slowdown_mean", "slowdown_std"};

Error parse_error(std::size_t line, std::string_view what) {
  return Error(ErrorCode::ParseError, fmt::format("line {}: {}", line, what));
}

class FixtureRecord {
public:
  FixtureRecord(const std::map<std::string, std::size_t, std::less<>>& columns, const csv::Record& rec)
      : columns_(columns), rec_(rec) {}

  std::string text(std::string_view column) const {
    auto it = columns_.find(column);
    return it == columns_.end() ? std::string() : rec_.fields[it->second];
  }

  std::optional<double> number(std::string_view column) const {
    const std::string raw = text(column);
    if (raw.empty()) return std::nullopt;
    double value = 0;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (ec != std::errc{} || ptr != raw.data() + raw.size() || !std::isfinite(value)) {
      throw parse_error(rec_.line, fmt::format("column '{}': bad number '{}'", column, raw));
    }
    return value;
  }

  std::optional<Stat> stat(std::string_view mean_column, std::string_view std_column) const {
    auto mean = number(mean_column);
    auto sd = number(std_column);
    if (!mean) {
      if (sd) throw parse_error(rec_.line, fmt::format("'{}' without '{}'", std_column, mean_column));
      return std::nullopt;
    }
    return Stat{*mean, sd};
  }

  std::size_t line() const { return rec_.line; }

private:
  const std::map<std::string, std::size_t, std::less<>>& columns_;
  const csv::Record& rec_;
};

Duration from_millis(double ms) { return Duration{std::llround(ms * 1e6)}; }

}  // namespace

std::vector<AggregateRow> parse_baseline_fixtures(std::string_view text) {
  const auto records = csv::parse(text);
  if (records.empty()) throw parse_error(1, "empty fixture file");

  std::map<std::string, std::size_t, std::less<>> columns;
  const auto& header = records.front();
  for (std::size_t i = 0; i < header.fields.size(); ++i) {
    const std::string& name = header.fields[i];
    if (!kKnownColumns.contains(name)) throw parse_error(header.line, fmt::format("unknown column '{}'", name));
    if (!columns.emplace(name, i).second) throw parse_error(header.line, fmt::format("duplicate column '{}'", name));
  }
  for (const char* required : {"source", "workload", "mode"}) {
    if (!columns.contains(required)) throw parse_error(header.line, fmt::format("missing column '{}'", required));
  }

  std::vector<AggregateRow> rows;
  for (std::size_t i = 1; i < records.size(); ++i) {
    const csv::Record& rec = records[i];
    if (rec.fields.size() != header.fields.size()) {
      throw parse_error(rec.line, fmt::format("{} fields, header has {}", rec.fields.size(), header.fields.size()));
    }
    FixtureRecord f(columns, rec);
    if (f.text("source") != to_string(Provenance::PaperFixture)) {
      throw parse_error(rec.line, fmt::format("source must be 'paper-fixture', got '{}'", f.text("source")));
    }
    AggregateRow row;
    row.source = Provenance::PaperFixture;
    row.group = f.text("group");
    row.workload = f.text("workload");
    row.args_label = f.text("args");
    row.mode = f.text("mode");
    if (auto reps = f.number("reps")) row.repetitions = static_cast<std::uint64_t>(*reps);
    row.jaccard = f.stat("jaccard_mean", "jaccard_std");
    row.nged = f.stat("nged_mean", "nged_std");
    row.block_cov = f.stat("block_cov_mean", "block_cov_std");
    row.edge_cov = f.stat("edge_cov_mean", "edge_cov_std");
    row.native_ms = f.number("native_ms");
    row.instrumented_ms = f.number("instrumented_ms");
    row.slowdown = f.stat("slowdown_mean", "slowdown_std");
    if (!row.slowdown && row.native_ms && row.instrumented_ms) {
      try {
        row.slowdown = Stat{slowdown(from_millis(*row.instrumented_ms), from_millis(*row.native_ms)).to_double(),
                            std::nullopt};
      } catch (const Error& e) {
        throw parse_error(f.line(), e.what());
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<AggregateRow> load_baseline_fixtures(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot open {}", path.string()));
  const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  try {
    return parse_baseline_fixtures(text);
  } catch (const Error& e) {
    throw e.with_context(path.string());
  }
}

}  // namespace branchlens
