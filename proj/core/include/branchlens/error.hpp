#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace branchlens {

enum class ErrorCode {
  // program-model
  OverlappingBlocks,
  DanglingEdge,
  EntryNotABlock,
  AmbiguousExits,
  InvalidProgram,
  ScriptExhausted,
  BadDecision,
  StepLimitExceeded,
  NoSuccessor,
  // hw-tracer
  IllegalTransition,
  BadParams,
  SessionNotActive,
  TraceFormat,
  // cfg-reconstruct
  UnmappedAddress,
  AmbiguousFallThrough,
  MidBlockTarget,
  // metrics
  EmptyGroundTruth,
  EmptyGroundTruthEdges,
  ZeroNativeTime,
  ZeroElapsed,
  // harness
  EmptyReport,
  ParseError,
  UntaggedRow,
  IoError,
  InvalidCampaign,
};

std::string_view error_name(ErrorCode code) noexcept;

// Domain error. what() renders as "Name(detail)", e.g. "UnmappedAddress(0xdead)".
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, std::string detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

  // Same code, detail prefixed with context ("workload 'ls': ...").
  Error with_context(std::string_view context) const;

private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace branchlens
