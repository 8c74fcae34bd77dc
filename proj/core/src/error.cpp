#include "branchlens/error.hpp"

#include <fmt/format.h>

namespace branchlens {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OverlappingBlocks: return "OverlappingBlocks";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::EntryNotABlock: return "EntryNotABlock";
    case ErrorCode::AmbiguousExits: return "AmbiguousExits";
    case ErrorCode::InvalidProgram: return "InvalidProgram";
    case ErrorCode::ScriptExhausted: return "ScriptExhausted";
    case ErrorCode::BadDecision: return "BadDecision";
    case ErrorCode::StepLimitExceeded: return "StepLimitExceeded";
    case ErrorCode::NoSuccessor: return "NoSuccessor";
    case ErrorCode::IllegalTransition: return "IllegalTransition";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::SessionNotActive: return "SessionNotActive";
    case ErrorCode::TraceFormat: return "TraceFormat";
    case ErrorCode::UnmappedAddress: return "UnmappedAddress";
    case ErrorCode::AmbiguousFallThrough: return "AmbiguousFallThrough";
    case ErrorCode::MidBlockTarget: return "MidBlockTarget";
    case ErrorCode::EmptyGroundTruth: return "EmptyGroundTruth";
    case ErrorCode::EmptyGroundTruthEdges: return "EmptyGroundTruthEdges";
    case ErrorCode::ZeroNativeTime: return "ZeroNativeTime";
    case ErrorCode::ZeroElapsed: return "ZeroElapsed";
    case ErrorCode::EmptyReport: return "EmptyReport";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UntaggedRow: return "UntaggedRow";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::InvalidCampaign: return "InvalidCampaign";
  }
  return "Error";
}

Error::Error(ErrorCode code, std::string detail)
    : std::runtime_error(fmt::format("{}({})", error_name(code), detail)),
      code_(code),
      detail_(std::move(detail)) {}

Error Error::with_context(std::string_view context) const {
  return Error(code_, fmt::format("{}: {}", context, detail_));
}

}  // namespace branchlens
