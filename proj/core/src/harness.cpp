#include "branchlens/harness.hpp"

#include <algorithm>
#include <chrono>
#include <future>
#include <set>

#include <fmt/format.h>

#include "branchlens/error.hpp"
#include "branchlens/metrics.hpp"
#include "branchlens/program_io.hpp"
#include "branchlens/reconstruct.hpp"
#include "branchlens/stats.hpp"
#include "branchlens/trace_io.hpp"
#include "branchlens/trace_run.hpp"

namespace branchlens {

std::string_view to_string(Provenance p) noexcept {
  switch (p) {
    case Provenance::Untagged: return "";
    case Provenance::Simulated: return "simulated";
    case Provenance::PaperFixture: return "paper-fixture";
  }
  return "";
}

namespace {

using nlohmann::json;

template <typename T>
T get_or(const json& obj, const char* key, T fallback) {
  if (!obj.contains(key)) return fallback;
  try {
    return obj.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, fmt::format("key '{}': {}", key, e.what()));
  }
}

SessionParams mode_params(const json& m) {
  SessionParams p;
  const std::string mode = get_or<std::string>(m, "mode", "bts");
  const auto parsed = parse_trace_mode(mode);
  if (!parsed) throw Error(ErrorCode::ParseError, fmt::format("bad mode '{}'", mode));
  p.mode = *parsed;
  if (m.contains("capacity")) {
    const auto cap = get_or<std::size_t>(m, "capacity", 0);
    if (p.mode != TraceMode::BtsOnly) p.lbr_capacity = cap;
    if (p.mode != TraceMode::LbrOnly) p.bts_capacity = cap;
  }
  p.lbr_capacity = get_or<std::size_t>(m, "lbr_capacity", p.lbr_capacity);
  p.bts_capacity = get_or<std::size_t>(m, "bts_capacity", p.bts_capacity);
  if (m.contains("threshold")) p.bts_threshold = get_or<std::size_t>(m, "threshold", 1);
  p.noise_records_per_boundary =
      get_or<std::uint32_t>(m, "noise", kDefaultNoiseRecordsPerBoundary);
  p.drain_sink = get_or<bool>(m, "sink", true);
  return p;
}

struct CellResult {
  GraphPair filtered;
  GraphPair raw;
  TracerStats stats;
  std::uint64_t instructions = 0;
  std::uint64_t syscalls = 0;
  Duration elapsed{};
};

struct LoadedWorkload {
  StaticCfg cfg;
  ExecutionScript script;
};

LoadedWorkload load_workload(const Campaign& c, std::size_t index) {
  const Workload& w = c.workloads[index];
  LoadedWorkload lw{load_cfg(w.cfg_path), {}};
  if (w.script_path.empty()) {
    std::mt19937_64 rng(mix_seed(c.seed, index));
    lw.script = random_script(lw.cfg, rng, c.random_script);
  } else {
    lw.script = load_script(w.script_path);
  }
  return lw;
}

std::string trace_file_name(const Workload& w, const CampaignMode& m, std::uint32_t rep) {
  return fmt::format("{}__{}__r{}.btrace", w.name, m.name, rep);
}

CellResult run_cell(const Campaign& c, const LoadedWorkload& lw, std::size_t wi, std::size_t mi,
                    std::uint32_t rep) {
  const CampaignMode& mode = c.modes[mi];
  const auto t0 = std::chrono::steady_clock::now();
  TraceRunResult run = trace_run(lw.cfg, lw.script, mode.params);
  const auto t1 = std::chrono::steady_clock::now();

  std::vector<BranchRecord> chronological = run.raw_trace;
  ReconstructOptions options;
  if (mode.params.mode == TraceMode::LbrOnly) {
    std::reverse(chronological.begin(), chronological.end());
    options.completeness = TraceCompleteness::Window;
  }
  if (c.trace_dir) save_trace(*c.trace_dir / trace_file_name(c.workloads[wi], mode, rep), chronological);

  const AddressRange region = mode.params.user_region.value_or(lw.cfg.user_region());
  const auto filtered_trace = filter_user_space(chronological, region);

  CellResult cell;
  cell.raw = project_to_ground_truth(reconstruct(chronological, lw.cfg, options), run.oracle);
  cell.filtered = project_to_ground_truth(reconstruct(filtered_trace, lw.cfg, options), run.oracle);
  cell.stats = run.stats;
  cell.instructions = run.oracle.instruction_total;
  cell.syscalls = run.oracle.syscall_count;
  cell.elapsed = std::chrono::duration_cast<Duration>(t1 - t0);
  return cell;
}

Stat summarize(const RunningStats& s) { return Stat{s.mean(), s.sample_stddev()}; }

}  // namespace

Campaign campaign_from_json(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "campaign must be an object");
  Campaign c;
  c.name = get_or<std::string>(doc, "name", c.name);
  auto resolve = [&](const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };
  if (!doc.contains("workloads") || !doc.at("workloads").is_array()) {
    throw Error(ErrorCode::ParseError, "campaign needs a workloads array");
  }
  for (const json& w : doc.at("workloads")) {
    Workload wl;
    wl.name = get_or<std::string>(w, "name", "");
    const auto cfg = get_or<std::string>(w, "cfg", "");
    if (wl.name.empty() || cfg.empty()) throw Error(ErrorCode::ParseError, "workload needs name and cfg");
    wl.cfg_path = resolve(cfg);
    const auto script = get_or<std::string>(w, "script", "");
    if (!script.empty()) wl.script_path = resolve(script);
    wl.args_label = get_or<std::string>(w, "args", "");
    c.workloads.push_back(std::move(wl));
  }
  if (!doc.contains("modes") || !doc.at("modes").is_array()) {
    throw Error(ErrorCode::ParseError, "campaign needs a modes array");
  }
  for (const json& m : doc.at("modes")) {
    CampaignMode mode;
    mode.params = mode_params(m);
    mode.name = get_or<std::string>(m, "name", std::string(to_string(mode.params.mode)));
    c.modes.push_back(std::move(mode));
  }
  c.repetitions = get_or<std::uint32_t>(doc, "repetitions", c.repetitions);
  c.seed = get_or<std::uint64_t>(doc, "seed", c.seed);
  c.jobs = std::max<std::size_t>(1, get_or<std::size_t>(doc, "jobs", c.jobs));
  if (doc.contains("random_script")) {
    const json& r = doc.at("random_script");
    c.random_script.taken_probability = get_or<double>(r, "taken_probability", c.random_script.taken_probability);
    c.random_script.max_back_edge_occurrence =
        get_or<std::uint64_t>(r, "max_back_edge_occurrence", c.random_script.max_back_edge_occurrence);
    c.random_script.syscall_site_probability =
        get_or<double>(r, "syscall_site_probability", c.random_script.syscall_site_probability);
  }
  validate(c);
  return c;
}

Campaign load_campaign(const std::filesystem::path& path) {
  try {
    return campaign_from_json(read_json_file(path), path.parent_path());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ParseError) throw e.with_context(path.string());
    throw;
  }
}

void validate(const Campaign& c) {
  if (c.repetitions == 0) throw Error(ErrorCode::InvalidCampaign, "repetitions must be >= 1");
  if (c.workloads.empty()) throw Error(ErrorCode::InvalidCampaign, "no workloads");
  if (c.modes.empty()) throw Error(ErrorCode::InvalidCampaign, "no modes");
  std::set<std::string> names;
  for (const auto& w : c.workloads) {
    if (!names.insert(w.name).second) {
      throw Error(ErrorCode::InvalidCampaign, fmt::format("duplicate workload '{}'", w.name));
    }
  }
  names.clear();
  for (const auto& m : c.modes) {
    if (!names.insert(m.name).second) {
      throw Error(ErrorCode::InvalidCampaign, fmt::format("duplicate mode '{}'", m.name));
    }
  }
}

std::vector<AggregateRow> run_campaign(const Campaign& c) {
  validate(c);
  if (c.trace_dir) std::filesystem::create_directories(*c.trace_dir);

  std::vector<LoadedWorkload> loaded;
  loaded.reserve(c.workloads.size());
  for (std::size_t wi = 0; wi < c.workloads.size(); ++wi) {
    try {
      loaded.push_back(load_workload(c, wi));
    } catch (const Error& e) {
      throw e.with_context(fmt::format("workload '{}'", c.workloads[wi].name));
    }
  }

  struct CellKey {
    std::size_t workload;
    std::size_t mode;
    std::uint32_t rep;
  };
  std::vector<CellKey> keys;
  for (std::size_t wi = 0; wi < c.workloads.size(); ++wi) {
    for (std::size_t mi = 0; mi < c.modes.size(); ++mi) {
      for (std::uint32_t r = 0; r < c.repetitions; ++r) keys.push_back({wi, mi, r});
    }
  }

  auto run_key = [&](const CellKey& k) {
    try {
      return run_cell(c, loaded[k.workload], k.workload, k.mode, k.rep);
    } catch (const Error& e) {
      throw e.with_context(
          fmt::format("workload '{}', mode '{}'", c.workloads[k.workload].name, c.modes[k.mode].name));
    }
  };

  std::vector<CellResult> cells(keys.size());
  if (c.jobs <= 1) {
    for (std::size_t i = 0; i < keys.size(); ++i) cells[i] = run_key(keys[i]);
  } else {
    std::vector<std::future<void>> workers;
    const std::size_t jobs = std::min(c.jobs, keys.size());
    for (std::size_t j = 0; j < jobs; ++j) {
      workers.push_back(std::async(std::launch::async, [&, j] {
        for (std::size_t i = j; i < keys.size(); i += jobs) cells[i] = run_key(keys[i]);
      }));
    }
    for (auto& w : workers) w.get();
  }

  // Deterministic fold over the canonical cell order.
  std::vector<AggregateRow> rows;
  std::size_t i = 0;
  for (std::size_t wi = 0; wi < c.workloads.size(); ++wi) {
    for (std::size_t mi = 0; mi < c.modes.size(); ++mi) {
      RunningStats jac, ged, bcov, ecov, rjac, rged, rbcov, recov, elapsed, ipss;
      AggregateRow row;
      row.source = Provenance::Simulated;
      row.group = c.name;
      row.workload = c.workloads[wi].name;
      row.args_label = c.workloads[wi].args_label;
      row.mode = c.modes[mi].name;
      row.repetitions = c.repetitions;
      for (std::uint32_t r = 0; r < c.repetitions; ++r, ++i) {
        const CellResult& cell = cells[i];
        jac.add(jaccard(cell.filtered).to_double());
        ged.add(normalized_ged(cell.filtered).to_double());
        bcov.add(block_coverage(cell.filtered).to_double());
        ecov.add(edge_coverage(cell.filtered).to_double());
        rjac.add(jaccard(cell.raw).to_double());
        rged.add(normalized_ged(cell.raw).to_double());
        rbcov.add(block_coverage(cell.raw).to_double());
        recov.add(edge_coverage(cell.raw).to_double());
        elapsed.add(std::chrono::duration<double, std::milli>(cell.elapsed).count());
        if (cell.elapsed.count() > 0) ipss.add(ips(cell.instructions, cell.elapsed).to_double());
        row.instructions = cell.instructions;
        row.syscalls = cell.syscalls;
        row.drain_count = cell.stats.drain_count;
        row.noise_records = cell.stats.noise_records;
        row.dropped_overflow = cell.stats.records_dropped_overflow;
      }
      row.jaccard = summarize(jac);
      row.nged = summarize(ged);
      row.block_cov = summarize(bcov);
      row.edge_cov = summarize(ecov);
      row.raw_jaccard = summarize(rjac);
      row.raw_nged = summarize(rged);
      row.raw_block_cov = summarize(rbcov);
      row.raw_edge_cov = summarize(recov);
      row.sim_elapsed_ms = summarize(elapsed);
      if (ipss.count() > 0) row.sim_ips = summarize(ipss);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace branchlens
