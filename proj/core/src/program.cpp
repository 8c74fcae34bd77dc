#include "branchlens/program.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "branchlens/error.hpp"

namespace branchlens {

std::string_view to_string(BranchKind kind) noexcept {
  switch (kind) {
    case BranchKind::ConditionalTaken: return "cond_taken";
    case BranchKind::ConditionalNotTaken: return "cond_not_taken";
    case BranchKind::Unconditional: return "unconditional";
    case BranchKind::IndirectJump: return "indirect";
    case BranchKind::Call: return "call";
    case BranchKind::Return: return "return";
    case BranchKind::Syscall: return "syscall";
  }
  return "unconditional";
}

std::optional<BranchKind> parse_branch_kind(std::string_view text) noexcept {
  for (auto kind : {BranchKind::ConditionalTaken, BranchKind::ConditionalNotTaken,
                    BranchKind::Unconditional, BranchKind::IndirectJump, BranchKind::Call,
                    BranchKind::Return, BranchKind::Syscall}) {
    if (text == to_string(kind)) return kind;
  }
  if (text == "fallthrough") return BranchKind::ConditionalNotTaken;
  return std::nullopt;
}

std::optional<Address> BlockExits::silent_successor() const {
  if (!fall_through) return std::nullopt;
  if (!conditional_taken && !taken.empty()) return std::nullopt;
  return fall_through->target;
}

const BasicBlock* StaticCfg::block_at(Address start) const {
  auto it = index_by_start_.find(start);
  return it == index_by_start_.end() ? nullptr : &blocks_[it->second];
}

const BasicBlock* StaticCfg::block_containing(Address a) const {
  auto it = index_by_start_.upper_bound(a);
  if (it == index_by_start_.begin()) return nullptr;
  const BasicBlock& b = blocks_[std::prev(it)->second];
  return b.contains(a) ? &b : nullptr;
}

const BlockExits& StaticCfg::exits(Address block_start) const {
  auto it = index_by_start_.find(block_start);
  if (it == index_by_start_.end()) {
    throw Error(ErrorCode::InvalidProgram, fmt::format("no block at {}", to_hex(block_start)));
  }
  return exits_[it->second];
}

bool StaticCfg::is_syscall_block(Address block_start) const {
  const auto& ft = exits(block_start).fall_through;
  return ft && ft->kind == BranchKind::Syscall;
}

StaticCfg build_cfg(const ProgramSpec& spec) {
  if (spec.user_region.empty()) {
    throw Error(ErrorCode::InvalidProgram,
                fmt::format("empty user region [{}, {})", to_hex(spec.user_region.lo),
                            to_hex(spec.user_region.hi)));
  }

  StaticCfg cfg;
  cfg.blocks_ = spec.blocks;
  std::sort(cfg.blocks_.begin(), cfg.blocks_.end(),
            [](const BasicBlock& a, const BasicBlock& b) { return a.start < b.start; });

  for (std::size_t i = 0; i < cfg.blocks_.size(); ++i) {
    const BasicBlock& b = cfg.blocks_[i];
    if (!(b.start < b.end) || b.instruction_count == 0) {
      throw Error(ErrorCode::InvalidProgram,
                  fmt::format("block {}-{} instr={}", to_hex(b.start), to_hex(b.end),
                              b.instruction_count));
    }
    if (!spec.user_region.contains(b.start) || b.end > spec.user_region.hi) {
      throw Error(ErrorCode::InvalidProgram,
                  fmt::format("block {} outside user region", to_hex(b.start)));
    }
    if (i > 0 && cfg.blocks_[i - 1].end > b.start) {
      const BasicBlock& prev = cfg.blocks_[i - 1];
      throw Error(ErrorCode::OverlappingBlocks,
                  fmt::format("{}-{} and {}-{}", to_hex(prev.start), to_hex(prev.end),
                              to_hex(b.start), to_hex(b.end)));
    }
    cfg.index_by_start_.emplace(b.start, i);
  }

  for (const CfgEdge& e : spec.edges) {
    for (Address endpoint : {e.source, e.target}) {
      if (!cfg.index_by_start_.contains(endpoint)) {
        throw Error(ErrorCode::DanglingEdge, to_hex(endpoint));
      }
    }
    if (std::find(cfg.edges_.begin(), cfg.edges_.end(), e) == cfg.edges_.end()) {
      cfg.edges_.push_back(e);
    }
  }

  if (!cfg.index_by_start_.contains(spec.entry)) {
    throw Error(ErrorCode::EntryNotABlock, to_hex(spec.entry));
  }
  cfg.entry_ = spec.entry;
  cfg.user_region_ = spec.user_region;

  cfg.exits_.resize(cfg.blocks_.size());
  for (const CfgEdge& e : cfg.edges_) {
    BlockExits& exits = cfg.exits_[cfg.index_by_start_.at(e.source)];
    auto ambiguous = [&](std::string_view why) {
      return Error(ErrorCode::AmbiguousExits, fmt::format("{}: {}", to_hex(e.source), why));
    };
    if (e.kind == BranchKind::ConditionalTaken) {
      if (exits.conditional_taken) throw ambiguous("two conditional targets");
      exits.conditional_taken = e;
    } else if (is_fall_through(e.kind)) {
      if (exits.fall_through) throw ambiguous("two fall-through successors");
      exits.fall_through = e;
    } else {
      exits.taken.push_back(e);
    }
    if (exits.conditional_taken && !exits.taken.empty()) {
      throw ambiguous("conditional block with unconditional exits");
    }
  }
  return cfg;
}

}  // namespace branchlens
