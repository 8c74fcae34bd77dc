#pragma once

#include <cstddef>
#include <vector>

#include "branchlens/branch_record.hpp"

namespace branchlens {

inline constexpr std::size_t kLbrMinCapacity = 4;
inline constexpr std::size_t kLbrMaxCapacity = 32;

// Fixed-size circular register stack; each push evicts the oldest entry once full.
class LbrStack {
public:
  // Throws Error(BadParams) outside [4, 32].
  explicit LbrStack(std::size_t capacity);

  void push(const BranchRecord& rec);
  // Copy of the stack, newest first. Reading does not clear it.
  std::vector<BranchRecord> snapshot() const;

  std::size_t capacity() const { return ring_.size(); }
  std::size_t size() const { return size_; }
  // Slot holding the newest entry; meaningless while empty.
  std::size_t tos() const { return tos_; }

private:
  std::vector<BranchRecord> ring_;
  std::size_t tos_ = 0;
  std::size_t size_ = 0;
};

}  // namespace branchlens
