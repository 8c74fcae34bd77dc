#include "branchlens/bts.hpp"

#include <fmt/format.h>

#include "branchlens/error.hpp"

namespace branchlens {

BtsBuffer::BtsBuffer(std::size_t capacity, std::size_t threshold)
    : capacity_(capacity), threshold_(threshold) {
  if (capacity == 0) throw Error(ErrorCode::BadParams, "bts capacity must be positive");
  if (threshold == 0 || threshold > capacity) {
    throw Error(ErrorCode::BadParams,
                fmt::format("bts threshold {} ∉ [1,{}]", threshold, capacity));
  }
  records_.reserve(capacity);
}

bool BtsBuffer::append(const BranchRecord& rec) {
  if (records_.size() == capacity_) {
    ++dropped_;
    return false;
  }
  records_.push_back(rec);
  if (sink_ && records_.size() >= threshold_) {
    ++interrupts_;
    sink_(records_);
    records_.clear();
  }
  return true;
}

std::vector<BranchRecord> BtsBuffer::drain() {
  std::vector<BranchRecord> out;
  out.swap(records_);
  records_.reserve(capacity_);
  return out;
}

}  // namespace branchlens
