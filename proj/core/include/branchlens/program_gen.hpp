#pragma once

#include <cstdint>
#include <random>

#include "branchlens/executor.hpp"
#include "branchlens/program.hpp"

namespace branchlens {

// Random-but-terminating toy programs for campaigns and property tests. Only raw
// mt19937_64 output is consumed, so results are identical across standard libraries.

struct RandomProgramOptions {
  std::uint32_t min_blocks = 2;
  std::uint32_t max_blocks = 50;
  std::uint64_t base = 0x400000;
  std::uint64_t bytes_per_instruction = 4;
  double syscall_edge_probability = 0.05;
  // Chance that a conditional-taken target is redrawn from blocks at or before the
  // branch. Zero keeps the uniform draw and the same rng stream.
  double loop_bias = 0.0;
  // Forward jumps land at most this many blocks ahead; 0 means anywhere ahead.
  std::uint32_t max_forward_span = 0;
};

struct RandomScriptOptions {
  double taken_probability = 0.5;
  // A conditional back-edge is taken only on its first N occurrences; bounds loops.
  std::uint64_t max_back_edge_occurrence = 3;
  double syscall_site_probability = 0.0;
  std::uint64_t max_steps = 1'000'000;
};

// Blocks are laid out contiguously from `base`; the last block is the only exit.
// Backward transfers are conditional only, so scripts from random_script terminate.
ProgramSpec random_program(std::mt19937_64& rng, const RandomProgramOptions& options = {});

// Walks cfg with the executor's exit rules, recording a decision at every branch point.
ExecutionScript random_script(const StaticCfg& cfg, std::mt19937_64& rng,
                              const RandomScriptOptions& options = {});

// splitmix64 finalizer over a seed and two coordinates.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace branchlens
