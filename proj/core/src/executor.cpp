#include "branchlens/executor.hpp"

#include <algorithm>
#include <unordered_map>

#include <fmt/format.h>

#include "branchlens/error.hpp"

namespace branchlens {
namespace {

const Decision& require_decision(const ExecutionScript& script, Address block,
                                 std::uint64_t occurrence) {
  auto it = script.decisions.find({block, occurrence});
  if (it == script.decisions.end()) {
    throw Error(ErrorCode::ScriptExhausted,
                fmt::format("{}, occurrence {}", to_hex(block), occurrence));
  }
  return it->second;
}

}  // namespace

ExecutionOracle execute(const StaticCfg& cfg, const ExecutionScript& script,
                        ExecutionLimits limits, ExecutionObserver* observer) {
  if (limits.max_steps == 0) {
    throw Error(ErrorCode::StepLimitExceeded, "max-steps must be positive");
  }

  const AddressRange user = cfg.user_region();
  auto make_record = [&](Address source, Address target) {
    // Toy predictor: always predicts taken.
    return BranchRecord{source, target, true, !(user.contains(source) && user.contains(target))};
  };

  ExecutionOracle oracle;
  std::unordered_map<Address, std::uint64_t> visits;
  Address current = cfg.entry();
  std::uint64_t steps = 0;

  while (true) {
    if (++steps > limits.max_steps) {
      throw Error(ErrorCode::StepLimitExceeded, fmt::format("{} steps", limits.max_steps));
    }
    const BasicBlock& block = *cfg.block_at(current);
    const std::uint64_t occurrence = ++visits[current];
    oracle.executed_blocks.push_back(current);
    oracle.instruction_total += block.instruction_count;

    if (cfg.is_syscall_block(current) || script.syscall_sites.contains(current)) {
      ++oracle.syscall_count;
      if (observer) {
        observer->on_boundary(BoundaryDirection::Enter, block.last_slot());
        observer->on_boundary(BoundaryDirection::Exit, block.last_slot());
      }
    }

    const BlockExits& exits = cfg.exits(current);
    if (exits.is_terminal()) break;

    std::optional<Address> next;
    bool recorded = false;
    if (exits.is_conditional()) {
      const Decision& d = require_decision(script, current, occurrence);
      if (d.taken) {
        next = exits.conditional_taken->target;
        recorded = true;
      } else if (exits.fall_through) {
        next = exits.fall_through->target;
      } else {
        throw Error(ErrorCode::NoSuccessor,
                    fmt::format("{} not taken without fall-through", to_hex(current)));
      }
    } else if (exits.taken.size() == 1) {
      next = exits.taken.front().target;
      recorded = true;
    } else if (!exits.taken.empty()) {
      const Decision& d = require_decision(script, current, occurrence);
      if (!d.target) {
        throw Error(ErrorCode::BadDecision,
                    fmt::format("{}, occurrence {}: target required", to_hex(current), occurrence));
      }
      auto hit = std::find_if(exits.taken.begin(), exits.taken.end(),
                              [&](const CfgEdge& e) { return e.target == *d.target; });
      if (hit == exits.taken.end()) {
        throw Error(ErrorCode::BadDecision,
                    fmt::format("{}, occurrence {}: {} is not a successor", to_hex(current),
                                occurrence, to_hex(*d.target)));
      }
      next = *d.target;
      recorded = true;
    } else {
      next = exits.fall_through->target;
    }

    if (recorded) {
      BranchRecord rec = make_record(block.last_slot(), *next);
      oracle.branch_events.push_back(rec);
      if (observer) observer->on_branch(rec);
    }
    oracle.executed_edges.emplace(current, *next);
    current = *next;
  }
  return oracle;
}

}  // namespace branchlens
