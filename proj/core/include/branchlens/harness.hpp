#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "branchlens/program_gen.hpp"
#include "branchlens/session.hpp"

namespace branchlens {

enum class Provenance { Untagged, Simulated, PaperFixture };
std::string_view to_string(Provenance p) noexcept;  // "", "simulated", "paper-fixture"

struct Stat {
  double mean = 0.0;
  std::optional<double> std;
};

struct AggregateRow {
  Provenance source = Provenance::Untagged;
  std::string group;
  std::string workload;
  std::string args_label;
  std::string mode;
  std::uint64_t repetitions = 0;

  // Metrics on the user-space-filtered trace.
  std::optional<Stat> jaccard;
  std::optional<Stat> nged;
  std::optional<Stat> block_cov;
  std::optional<Stat> edge_cov;
  // Metrics on the raw (unfiltered) trace.
  std::optional<Stat> raw_jaccard;
  std::optional<Stat> raw_nged;
  std::optional<Stat> raw_block_cov;
  std::optional<Stat> raw_edge_cov;

  // Timing pairs; only fixtures or user-supplied measurements carry these.
  std::optional<double> native_ms;
  std::optional<double> instrumented_ms;
  std::optional<Stat> slowdown;

  // Deterministic tracer bookkeeping (simulated rows).
  std::optional<std::uint64_t> instructions;
  std::optional<std::uint64_t> syscalls;
  std::optional<std::uint64_t> drain_count;
  std::optional<std::uint64_t> noise_records;
  std::optional<std::uint64_t> dropped_overflow;

  // Wall-clock cost of this artifact's simulation, not hardware overhead.
  std::optional<Stat> sim_elapsed_ms;
  std::optional<Stat> sim_ips;
};

struct Workload {
  std::string name;
  std::filesystem::path cfg_path;
  // Empty: decisions are generated from the campaign seed.
  std::filesystem::path script_path;
  std::string args_label;
};

struct CampaignMode {
  std::string name;
  SessionParams params;
};

struct Campaign {
  std::string name = "campaign";
  std::vector<Workload> workloads;
  std::vector<CampaignMode> modes;
  std::uint32_t repetitions = 5;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  RandomScriptOptions random_script;
  // When set, every run's raw trace is written here as .btrace.
  std::optional<std::filesystem::path> trace_dir;
};

// Relative workload paths resolve against base_dir. Throws Error(ParseError | InvalidCampaign).
Campaign campaign_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir);
Campaign load_campaign(const std::filesystem::path& path);
// Throws Error(InvalidCampaign) on repetitions == 0, duplicate names, or no modes.
void validate(const Campaign& c);

// One row per (workload, mode), canonical order. Errors carry the workload name.
std::vector<AggregateRow> run_campaign(const Campaign& c);

}  // namespace branchlens
