#include "branchlens/lbr.hpp"

#include <fmt/format.h>

#include "branchlens/error.hpp"

namespace branchlens {

LbrStack::LbrStack(std::size_t capacity) {
  if (capacity < kLbrMinCapacity || capacity > kLbrMaxCapacity) {
    throw Error(ErrorCode::BadParams, fmt::format("lbr capacity {} ∉ [{},{}]", capacity,
                                                  kLbrMinCapacity, kLbrMaxCapacity));
  }
  ring_.resize(capacity);
  tos_ = capacity - 1;
}

void LbrStack::push(const BranchRecord& rec) {
  tos_ = (tos_ + 1) % ring_.size();
  ring_[tos_] = rec;
  if (size_ < ring_.size()) ++size_;
}

std::vector<BranchRecord> LbrStack::snapshot() const {
  std::vector<BranchRecord> out;
  out.reserve(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    out.push_back(ring_[(tos_ + ring_.size() - i) % ring_.size()]);
  }
  return out;
}

}  // namespace branchlens
