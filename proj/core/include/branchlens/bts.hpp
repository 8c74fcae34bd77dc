#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "branchlens/branch_record.hpp"

namespace branchlens {

// Debug-Store style trace buffer. When the write index reaches the interrupt
// threshold and a sink is attached, the sink is called synchronously with the
// buffered batch and the index resets. Without a sink, records arriving at a full
// buffer are dropped and counted.
class BtsBuffer {
public:
  using Sink = std::function<void(std::span<const BranchRecord>)>;

  // Throws Error(BadParams) unless 1 <= threshold <= capacity.
  BtsBuffer(std::size_t capacity, std::size_t threshold);

  void attach_sink(Sink sink) { sink_ = std::move(sink); }
  bool has_sink() const { return static_cast<bool>(sink_); }

  // False when the record was dropped on overflow.
  bool append(const BranchRecord& rec);
  // Returns the buffered records in emission order and resets the index.
  std::vector<BranchRecord> drain();

  std::size_t capacity() const { return capacity_; }
  std::size_t threshold() const { return threshold_; }
  std::size_t index() const { return records_.size(); }
  std::uint64_t interrupt_count() const { return interrupts_; }
  std::uint64_t dropped_overflow() const { return dropped_; }

private:
  std::size_t capacity_;
  std::size_t threshold_;
  std::vector<BranchRecord> records_;
  Sink sink_;
  std::uint64_t interrupts_ = 0;
  std::uint64_t dropped_ = 0;
};

}  // namespace branchlens
