#pragma once

// Test-only reference implementations. None of these share code with the library;
// they recompute the same quantities the slow, obvious way.

#include <cstdint>
#include <variant>
#include <vector>

#include "branchlens/executor.hpp"
#include "branchlens/graph.hpp"
#include "branchlens/ratio.hpp"

namespace branchlens::testing {

// Minimum number of single-element insertions/deletions turning the traced graph
// into the ground-truth graph, found by breadth-first search over valid graphs
// (an edge may only exist while both endpoints do). Exponential; keep |N|+|E| small.
std::uint64_t brute_force_edits(const GraphPair& p);

// Drain bookkeeping for a BTS buffer with a sink, counted one record at a time.
struct DrainSchedule {
  std::uint64_t threshold_drains = 0;
  std::uint64_t final_drain_records = 0;
};
DrainSchedule scalar_drain_schedule(std::uint64_t records, std::uint64_t threshold);

// Mean and sample standard deviation by summing twice.
struct TwoPass {
  double mean = 0.0;
  double stddev = 0.0;
};
TwoPass two_pass(const std::vector<double>& xs);

// Everything the executor reports to an observer, in order.
struct BoundaryEvent {
  BoundaryDirection direction;
  Address site;
};
using ObservedEvent = std::variant<BranchRecord, BoundaryEvent>;

class EventRecorder final : public ExecutionObserver {
public:
  void on_branch(const BranchRecord& rec) override { events.emplace_back(rec); }
  void on_boundary(BoundaryDirection direction, Address site) override {
    events.emplace_back(BoundaryEvent{direction, site});
  }
  std::vector<ObservedEvent> events;
};

// The stream a tracer should admit: user-mode branches as observed, kernel-mode ones
// dropped, and `noise` synthetic kernel records per boundary using the documented
// address scheme.
std::vector<BranchRecord> expected_gated_stream(const std::vector<ObservedEvent>& events,
                                                AddressRange user_region, std::uint32_t noise);

// num/den compared by cross multiplication, so neither side needs reducing.
bool equals(const Ratio& r, std::uint64_t num, std::uint64_t den);

// Set arithmetic for the accuracy metrics, unreduced.
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};
Fraction direct_jaccard(const GraphPair& p);
Fraction direct_block_coverage(const GraphPair& p);
Fraction direct_edge_coverage(const GraphPair& p);

}  // namespace branchlens::testing
