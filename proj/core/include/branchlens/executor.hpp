#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "branchlens/branch_record.hpp"
#include "branchlens/graph.hpp"
#include "branchlens/program.hpp"

namespace branchlens {

struct Decision {
  bool taken = false;
  std::optional<Address> target;  // required for blocks with several taken exits
  constexpr bool operator==(const Decision&) const = default;
};

// Branch outcomes keyed by (block start, 1-based occurrence).
struct ExecutionScript {
  std::map<std::pair<Address, std::uint64_t>, Decision> decisions;
  std::set<Address> syscall_sites;

  void decide(Address block, std::uint64_t occurrence, bool taken,
              std::optional<Address> target = std::nullopt) {
    decisions[{block, occurrence}] = Decision{taken, target};
  }
};


struct ExecutionOracle {
  std::vector<BranchRecord> branch_events;
  std::vector<Address> executed_blocks;
  std::set<EdgePair> executed_edges;
  std::uint64_t instruction_total = 0;
  std::uint64_t syscall_count = 0;

  bool operator==(const ExecutionOracle&) const = default;
};

enum class BoundaryDirection { Enter, Exit };

// Receives the processor-side event stream while execute() runs.
class ExecutionObserver {
public:
  virtual ~ExecutionObserver() = default;
  virtual void on_branch(const BranchRecord& rec) = 0;
  // site: last instruction slot of the block issuing the syscall.
  virtual void on_boundary(BoundaryDirection direction, Address site) = 0;
};

struct ExecutionLimits {
  std::uint64_t max_steps = 1'000'000;
};

// Deterministic reference interpreter. Throws Error(ScriptExhausted | BadDecision |
// StepLimitExceeded | NoSuccessor).
ExecutionOracle execute(const StaticCfg& cfg, const ExecutionScript& script,
                        ExecutionLimits limits = {}, ExecutionObserver* observer = nullptr);

}  // namespace branchlens
