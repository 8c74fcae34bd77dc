#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "branchlens/bts.hpp"
#include "branchlens/executor.hpp"
#include "branchlens/lbr.hpp"

namespace branchlens {

enum class TraceMode { LbrOnly, BtsOnly, Both };

std::string_view to_string(TraceMode mode) noexcept;
// "lbr" | "bts" | "both"
std::optional<TraceMode> parse_trace_mode(std::string_view text) noexcept;

// x86-64 canonical lower half; used when a session is not given a user region.
inline constexpr AddressRange kDefaultUserRegion{Address{0}, Address{0x0000'8000'0000'0000ULL}};
// Fixed kernel-space addresses used by boundary-noise records.
inline constexpr Address kKernelEntryBase{0xffff'ffff'8100'0000ULL};
inline constexpr Address kKernelExitBase{0xffff'ffff'8200'0000ULL};

inline constexpr std::size_t kDefaultLbrCapacity = 16;
inline constexpr std::size_t kDefaultBtsCapacity = 1024;
inline constexpr std::uint32_t kDefaultNoiseRecordsPerBoundary = 2;

// capacity - 64, clamped to >= 1.
constexpr std::size_t default_bts_threshold(std::size_t capacity) {
  return capacity > 65 ? capacity - 64 : 1;
}

struct SessionParams {
  TraceMode mode = TraceMode::BtsOnly;
  std::size_t lbr_capacity = kDefaultLbrCapacity;
  std::size_t bts_capacity = kDefaultBtsCapacity;
  std::optional<std::size_t> bts_threshold;  // default_bts_threshold(bts_capacity)
  std::optional<AddressRange> user_region;   // kDefaultUserRegion
  std::uint32_t noise_records_per_boundary = kDefaultNoiseRecordsPerBoundary;
  bool drain_sink = true;

  std::size_t effective_threshold() const {
    return bts_threshold.value_or(default_bts_threshold(bts_capacity));
  }
  AddressRange effective_user_region() const { return user_region.value_or(kDefaultUserRegion); }
};

enum class SessionStatus { Configured, Active, Stopped };
std::string_view to_string(SessionStatus status) noexcept;

struct TracerStats {
  std::uint64_t records_observed = 0;
  std::uint64_t records_emitted = 0;
  std::uint64_t records_dropped_gating = 0;
  std::uint64_t records_dropped_overflow = 0;
  std::uint64_t drain_count = 0;  // threshold (interrupt) drains
  std::uint64_t final_drain_records = 0;
  std::uint64_t noise_records = 0;

  bool operator==(const TracerStats&) const = default;
};

namespace cmd {
struct Configure {
  SessionParams params;
};
struct Start {};
struct Stop {};
struct ReadLbr {};
struct DrainBts {};
}  // namespace cmd

using SessionCommand = std::variant<cmd::Configure, cmd::Start, cmd::Stop, cmd::ReadLbr, cmd::DrainBts>;
std::string_view command_name(const SessionCommand& command) noexcept;

struct CommandResult {
  SessionStatus status = SessionStatus::Configured;
  std::vector<BranchRecord> records;  // ReadLbr: newest first. DrainBts: emission order.
};

// Emulated kernel-side tracer, driven through an ioctl-like command interface.
// Single writer: exactly one executor feeds a session.
class TraceSession final : public ExecutionObserver {
public:
  // Throws Error(BadParams).
  explicit TraceSession(SessionParams params = {});
  TraceSession(const TraceSession&) = delete;
  TraceSession& operator=(const TraceSession&) = delete;

  // Throws Error(IllegalTransition | BadParams).
  CommandResult command(const SessionCommand& command);

  // Gates kernel-mode records. Throws Error(SessionNotActive).
  void observe_branch(BranchRecord rec);
  // Injects noise_records_per_boundary kernel-mode records, bypassing gating.
  void observe_boundary(BoundaryDirection direction, Address site);

  void on_branch(const BranchRecord& rec) override { observe_branch(rec); }
  void on_boundary(BoundaryDirection direction, Address site) override {
    observe_boundary(direction, site);
  }

  SessionStatus status() const { return status_; }
  const SessionParams& params() const { return params_; }
  const TracerStats& stats() const { return stats_; }
  const LbrStack* lbr() const { return lbr_ ? &*lbr_ : nullptr; }
  const BtsBuffer* bts() const { return bts_ ? &*bts_ : nullptr; }
  const std::vector<std::vector<BranchRecord>>& drained_batches() const { return drained_; }

private:
  void apply(const SessionParams& params);
  void emit(const BranchRecord& rec);
  void require_active() const;

  SessionParams params_;
  SessionStatus status_ = SessionStatus::Configured;
  std::optional<LbrStack> lbr_;
  std::optional<BtsBuffer> bts_;
  std::vector<std::vector<BranchRecord>> drained_;
  TracerStats stats_;
};

}  // namespace branchlens
