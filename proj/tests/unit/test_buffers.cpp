#include "doctest.h"

#include "branchlens/bts.hpp"
#include "branchlens/error.hpp"
#include "branchlens/lbr.hpp"

using namespace branchlens;

namespace {

BranchRecord rec(std::uint64_t n) {
  return BranchRecord{Address{0x1000 + n}, Address{0x2000 + n}, true, false};
}

}  // namespace

TEST_SUITE("buffers") {

TEST_CASE("lbr keeps the newest records, newest first") {
  LbrStack lbr(4);
  for (std::uint64_t i = 1; i <= 5; ++i) lbr.push(rec(i));
  CHECK(lbr.snapshot() == std::vector<BranchRecord>{rec(5), rec(4), rec(3), rec(2)});
  CHECK(lbr.size() == 4);
}

TEST_CASE("lbr snapshot does not clear") {
  LbrStack lbr(8);
  CHECK(lbr.snapshot().empty());
  lbr.push(rec(1));
  lbr.push(rec(2));
  CHECK(lbr.snapshot() == lbr.snapshot());
  CHECK(lbr.snapshot().size() == 2);
}

TEST_CASE("lbr tos tracks the newest slot") {
  LbrStack lbr(4);
  lbr.push(rec(1));
  CHECK(lbr.tos() == 0);
  for (std::uint64_t i = 2; i <= 6; ++i) lbr.push(rec(i));
  CHECK(lbr.tos() == 1);
}

TEST_CASE("lbr capacity bounds") {
  CHECK_NOTHROW(LbrStack(4));
  CHECK_NOTHROW(LbrStack(32));
  CHECK_THROWS_WITH_AS(LbrStack(33), "BadParams(lbr capacity 33 ∉ [4,32])", Error);
  CHECK_THROWS_AS(LbrStack(3), Error);
}

TEST_CASE("bts threshold drains a batch to the sink") {
  BtsBuffer bts(8, 6);
  std::vector<std::vector<BranchRecord>> batches;
  bts.attach_sink([&](std::span<const BranchRecord> b) { batches.emplace_back(b.begin(), b.end()); });
  for (std::uint64_t i = 1; i <= 6; ++i) CHECK(bts.append(rec(i)));
  REQUIRE(batches.size() == 1);
  CHECK(batches[0].size() == 6);
  CHECK(batches[0].front() == rec(1));
  CHECK(bts.index() == 0);
  CHECK(bts.interrupt_count() == 1);
}

TEST_CASE("bts without a sink drops on overflow") {
  BtsBuffer bts(4, 2);
  for (std::uint64_t i = 1; i <= 4; ++i) CHECK(bts.append(rec(i)));
  CHECK_FALSE(bts.append(rec(5)));
  CHECK(bts.dropped_overflow() == 1);
  CHECK(bts.index() == 4);
  CHECK(bts.drain() == std::vector<BranchRecord>{rec(1), rec(2), rec(3), rec(4)});
  CHECK(bts.index() == 0);
}

TEST_CASE("bts parameter validation") {
  CHECK_THROWS_AS(BtsBuffer(0, 1), Error);
  CHECK_THROWS_AS(BtsBuffer(8, 9), Error);
  CHECK_THROWS_AS(BtsBuffer(8, 0), Error);
  CHECK_NOTHROW(BtsBuffer(1, 1));
}

}  // TEST_SUITE
