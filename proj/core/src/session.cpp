#include "branchlens/session.hpp"

#include <fmt/format.h>

#include "branchlens/error.hpp"

namespace branchlens {

std::string_view to_string(TraceMode mode) noexcept {
  switch (mode) {
    case TraceMode::LbrOnly: return "lbr";
    case TraceMode::BtsOnly: return "bts";
    case TraceMode::Both: return "both";
  }
  return "bts";
}

std::optional<TraceMode> parse_trace_mode(std::string_view text) noexcept {
  if (text == "lbr") return TraceMode::LbrOnly;
  if (text == "bts") return TraceMode::BtsOnly;
  if (text == "both") return TraceMode::Both;
  return std::nullopt;
}

std::string_view to_string(SessionStatus status) noexcept {
  switch (status) {
    case SessionStatus::Configured: return "Configured";
    case SessionStatus::Active: return "Active";
    case SessionStatus::Stopped: return "Stopped";
  }
  return "Configured";
}

std::string_view command_name(const SessionCommand& command) noexcept {
  static constexpr std::string_view names[] = {"Configure", "Start", "Stop", "ReadLbr", "DrainBts"};
  return names[command.index()];
}

TraceSession::TraceSession(SessionParams params) { apply(params); }

void TraceSession::apply(const SessionParams& params) {
  const AddressRange region = params.effective_user_region();
  if (region.empty()) throw Error(ErrorCode::BadParams, "empty user region");
  if (region.hi > kKernelEntryBase) {
    throw Error(ErrorCode::BadParams,
                fmt::format("user region end {} reaches kernel space", to_hex(region.hi)));
  }

  std::optional<LbrStack> lbr;
  std::optional<BtsBuffer> bts;
  if (params.mode != TraceMode::BtsOnly) lbr.emplace(params.lbr_capacity);
  if (params.mode != TraceMode::LbrOnly) {
    bts.emplace(params.bts_capacity, params.effective_threshold());
    if (params.drain_sink) {
      bts->attach_sink([this](std::span<const BranchRecord> batch) {
        drained_.emplace_back(batch.begin(), batch.end());
        ++stats_.drain_count;
      });
    }
  }
  params_ = params;
  lbr_ = std::move(lbr);
  bts_ = std::move(bts);
  drained_.clear();
  stats_ = {};
}

CommandResult TraceSession::command(const SessionCommand& command) {
  auto illegal = [&] {
    return Error(ErrorCode::IllegalTransition,
                 fmt::format("{}, {}", to_string(status_), command_name(command)));
  };
  CommandResult result;
  if (const auto* configure = std::get_if<cmd::Configure>(&command)) {
    if (status_ != SessionStatus::Configured) throw illegal();
    apply(configure->params);
  } else if (std::holds_alternative<cmd::Start>(command)) {
    if (status_ != SessionStatus::Configured) throw illegal();
    status_ = SessionStatus::Active;
  } else if (std::holds_alternative<cmd::Stop>(command)) {
    if (status_ != SessionStatus::Active) throw illegal();
    status_ = SessionStatus::Stopped;
  } else if (std::holds_alternative<cmd::ReadLbr>(command)) {
    if (lbr_) result.records = lbr_->snapshot();
  } else if (std::holds_alternative<cmd::DrainBts>(command)) {
    if (bts_) {
      for (auto& batch : drained_) {
        result.records.insert(result.records.end(), batch.begin(), batch.end());
      }
      drained_.clear();
      auto rest = bts_->drain();
      stats_.final_drain_records += rest.size();
      result.records.insert(result.records.end(), rest.begin(), rest.end());
    }
  }
  result.status = status_;
  return result;
}

void TraceSession::require_active() const {
  if (status_ != SessionStatus::Active) {
    throw Error(ErrorCode::SessionNotActive, std::string(to_string(status_)));
  }
}

void TraceSession::emit(const BranchRecord& rec) {
  ++stats_.records_emitted;
  if (lbr_) lbr_->push(rec);
  if (bts_ && !bts_->append(rec)) ++stats_.records_dropped_overflow;
}

void TraceSession::observe_branch(BranchRecord rec) {
  require_active();
  ++stats_.records_observed;
  const AddressRange region = params_.effective_user_region();
  rec.kernel_mode = !(region.contains(rec.source) && region.contains(rec.target));
  if (rec.kernel_mode) {
    ++stats_.records_dropped_gating;
    return;
  }
  emit(rec);
}

void TraceSession::observe_boundary(BoundaryDirection direction, Address site) {
  require_active();
  const std::uint32_t n = params_.noise_records_per_boundary;
  for (std::uint32_t i = 0; i < n; ++i) {
    BranchRecord rec;
    rec.predicted = true;
    rec.kernel_mode = true;
    if (direction == BoundaryDirection::Enter) {
      rec.source = i == 0 ? site : kKernelEntryBase + 0x10 * i;
      rec.target = kKernelEntryBase + 0x10 * (i + 1);
    } else {
      rec.source = kKernelExitBase + 0x10 * i;
      rec.target = kKernelExitBase + 0x10 * (i + 1);
    }
    ++stats_.noise_records;
    emit(rec);
  }
}

}  // namespace branchlens
