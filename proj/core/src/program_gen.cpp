#include "branchlens/program_gen.hpp"

#include <algorithm>
#include <unordered_map>

#include "branchlens/error.hpp"

namespace branchlens {
namespace {

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

bool chance(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix(splitmix(splitmix(seed) ^ a) ^ b);
}

ProgramSpec random_program(std::mt19937_64& rng, const RandomProgramOptions& options) {
  const std::uint32_t lo = std::max<std::uint32_t>(options.min_blocks, 1);
  const std::uint32_t hi = std::max(options.max_blocks, lo);
  const std::uint32_t n = lo + static_cast<std::uint32_t>(below(rng, hi - lo + 1));

  ProgramSpec spec;
  std::uint64_t cursor = options.base;
  for (std::uint32_t i = 0; i < n; ++i) {
    const auto instr = static_cast<std::uint32_t>(1 + below(rng, 8));
    spec.blocks.push_back(BasicBlock{Address{cursor}, Address{cursor + instr * options.bytes_per_instruction}, instr});
    cursor += instr * options.bytes_per_instruction;
  }
  spec.entry = spec.blocks.front().start;
  // Leave a gap of unmapped user addresses above the last block.
  spec.user_region = AddressRange{Address{options.base}, Address{cursor + 0x1000}};

  auto start = [&](std::uint64_t i) { return spec.blocks[i].start; };
  auto forward = [&](std::uint32_t i) {
    std::uint64_t span = n - i - 1;
    if (options.max_forward_span > 0) span = std::min<std::uint64_t>(span, options.max_forward_span);
    return i + 1 + below(rng, span);
  };

  for (std::uint32_t i = 0; i + 1 < n; ++i) {
    const std::uint64_t roll = below(rng, 100);
    if (roll < 45) {
      std::uint64_t target = below(rng, n);
      if (options.loop_bias > 0 && chance(rng, options.loop_bias)) target = below(rng, i + 1);
      spec.edges.push_back({start(i), start(target), BranchKind::ConditionalTaken});
      spec.edges.push_back({start(i), start(i + 1), BranchKind::ConditionalNotTaken});
    } else if (roll < 60) {
      spec.edges.push_back({start(i), start(forward(i)), BranchKind::Unconditional});
    } else if (roll < 70) {
      spec.edges.push_back({start(i), start(forward(i)), BranchKind::Call});
    } else if (roll < 80) {
      const std::uint64_t fanout = 2 + below(rng, 2);
      for (std::uint64_t k = 0; k < fanout; ++k) {
        spec.edges.push_back({start(i), start(forward(i)), BranchKind::IndirectJump});
      }
    } else if (chance(rng, options.syscall_edge_probability * 5)) {
      spec.edges.push_back({start(i), start(i + 1), BranchKind::Syscall});
    } else {
      spec.edges.push_back({start(i), start(i + 1), BranchKind::ConditionalNotTaken});
    }
  }
  return spec;
}

ExecutionScript random_script(const StaticCfg& cfg, std::mt19937_64& rng,
                              const RandomScriptOptions& options) {
  ExecutionScript script;
  for (const BasicBlock& b : cfg.blocks()) {
    if (chance(rng, options.syscall_site_probability)) script.syscall_sites.insert(b.start);
  }

  std::unordered_map<Address, std::uint64_t> visits;
  Address current = cfg.entry();
  for (std::uint64_t step = 0; step < options.max_steps; ++step) {
    const std::uint64_t occurrence = ++visits[current];
    const BlockExits& exits = cfg.exits(current);
    if (exits.is_terminal()) return script;

    if (exits.is_conditional()) {
      const Address target = exits.conditional_taken->target;
      bool taken = chance(rng, options.taken_probability);
      if (target <= current && occurrence > options.max_back_edge_occurrence) taken = false;
      if (!exits.fall_through) taken = true;
      script.decide(current, occurrence, taken);
      current = taken ? target : exits.fall_through->target;
    } else if (exits.taken.size() > 1) {
      const Address target = exits.taken[below(rng, exits.taken.size())].target;
      script.decide(current, occurrence, true, target);
      current = target;
    } else if (exits.taken.size() == 1) {
      current = exits.taken.front().target;
    } else {
      current = exits.fall_through->target;
    }
  }
  throw Error(ErrorCode::StepLimitExceeded, "random script did not terminate");
}

}  // namespace branchlens
