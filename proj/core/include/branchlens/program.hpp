#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "branchlens/address.hpp"

namespace branchlens {

struct BasicBlock {
  Address start;
  Address end;  // exclusive
  std::uint32_t instruction_count = 1;

  // Address of the last instruction slot; source of any branch leaving the block.
  constexpr Address last_slot() const { return end - 1; }
  constexpr bool contains(Address a) const { return start <= a && a < end; }
  constexpr bool operator==(const BasicBlock&) const = default;
};

enum class BranchKind {
  ConditionalTaken,
  ConditionalNotTaken,
  Unconditional,
  IndirectJump,
  Call,
  Return,
  Syscall,
};

std::string_view to_string(BranchKind kind) noexcept;
// Accepts the names produced by to_string plus "fallthrough" for ConditionalNotTaken.
std::optional<BranchKind> parse_branch_kind(std::string_view text) noexcept;

// Kinds that transfer control without a user-mode branch record.
constexpr bool is_fall_through(BranchKind kind) {
  return kind == BranchKind::ConditionalNotTaken || kind == BranchKind::Syscall;
}

struct CfgEdge {
  Address source;  // block start
  Address target;  // block start
  BranchKind kind = BranchKind::Unconditional;

  constexpr bool operator==(const CfgEdge&) const = default;
};

// Unvalidated description, as read from a program file.
struct ProgramSpec {
  std::vector<BasicBlock> blocks;
  std::vector<CfgEdge> edges;
  Address entry;
  AddressRange user_region;
};

// How control leaves a block, derived from its outgoing edges.
struct BlockExits {
  std::optional<CfgEdge> conditional_taken;
  std::optional<CfgEdge> fall_through;
  std::vector<CfgEdge> taken;  // Unconditional / IndirectJump / Call / Return

  bool is_conditional() const { return conditional_taken.has_value(); }
  bool is_terminal() const { return !conditional_taken && !fall_through && taken.empty(); }
  // Block can be left silently (no branch record).
  std::optional<Address> silent_successor() const;
};

// Validated, immutable program graph.
class StaticCfg {
public:
  const std::vector<BasicBlock>& blocks() const { return blocks_; }
  const std::vector<CfgEdge>& edges() const { return edges_; }
  Address entry() const { return entry_; }
  AddressRange user_region() const { return user_region_; }

  const BasicBlock* block_at(Address start) const;
  const BasicBlock* block_containing(Address a) const;
  const BlockExits& exits(Address block_start) const;
  bool is_syscall_block(Address block_start) const;

private:
  friend StaticCfg build_cfg(const ProgramSpec& spec);

  std::vector<BasicBlock> blocks_;  // sorted by start
  std::vector<CfgEdge> edges_;
  Address entry_;
  AddressRange user_region_;
  std::map<Address, std::size_t> index_by_start_;
  std::vector<BlockExits> exits_;  // parallel to blocks_
};

// Throws Error(OverlappingBlocks | DanglingEdge | EntryNotABlock | AmbiguousExits | InvalidProgram).
StaticCfg build_cfg(const ProgramSpec& spec);

}  // namespace branchlens
