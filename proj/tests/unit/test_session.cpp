#include "doctest.h"

#include "branchlens/error.hpp"
#include "branchlens/session.hpp"

using namespace branchlens;

namespace {

constexpr AddressRange kUser{Address{0x400000}, Address{0x500000}};

BranchRecord user_rec(std::uint64_t n) {
  return BranchRecord{Address{0x401000 + n}, Address{0x402000 + n}, true, false};
}

SessionParams bts_params(std::size_t capacity, std::size_t threshold, std::uint32_t noise = 0) {
  SessionParams p;
  p.mode = TraceMode::BtsOnly;
  p.bts_capacity = capacity;
  p.bts_threshold = threshold;
  p.user_region = kUser;
  p.noise_records_per_boundary = noise;
  return p;
}

ErrorCode code_of(TraceSession& s, const SessionCommand& c) {
  try {
    s.command(c);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("command unexpectedly succeeded");
  return ErrorCode::BadParams;
}

}  // namespace

TEST_SUITE("session") {

TEST_CASE("configure rejects an out-of-range lbr capacity") {
  TraceSession s;
  SessionParams p;
  p.mode = TraceMode::LbrOnly;
  p.lbr_capacity = 33;
  try {
    s.command(cmd::Configure{p});
    FAIL("expected BadParams");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "BadParams(lbr capacity 33 ∉ [4,32])");
  }
  CHECK(s.status() == SessionStatus::Configured);
}

TEST_CASE("configure rejects a threshold above capacity") {
  TraceSession s;
  CHECK(code_of(s, cmd::Configure{bts_params(8, 9)}) == ErrorCode::BadParams);
}

TEST_CASE("lifecycle runs Configured, Active, Stopped") {
  TraceSession s(bts_params(8, 6));
  CHECK(s.command(cmd::Start{}).status == SessionStatus::Active);
  CHECK(code_of(s, cmd::Start{}) == ErrorCode::IllegalTransition);
  CHECK(code_of(s, cmd::Configure{bts_params(8, 6)}) == ErrorCode::IllegalTransition);
  CHECK(s.command(cmd::Stop{}).status == SessionStatus::Stopped);
  CHECK(code_of(s, cmd::Start{}) == ErrorCode::IllegalTransition);
  CHECK(code_of(s, cmd::Stop{}) == ErrorCode::IllegalTransition);
}

TEST_CASE("illegal transition names status and command") {
  TraceSession s;
  try {
    s.command(cmd::Stop{});
    FAIL("expected IllegalTransition");
  } catch (const Error& e) {
    CHECK(std::string(e.what()) == "IllegalTransition(Configured, Stop)");
  }
}

TEST_CASE("read lbr before any branch is empty") {
  SessionParams p;
  p.mode = TraceMode::LbrOnly;
  TraceSession s(p);
  s.command(cmd::Start{});
  CHECK(s.command(cmd::ReadLbr{}).records.empty());
}

TEST_CASE("observing requires an active session") {
  TraceSession s(bts_params(8, 6));
  CHECK_THROWS_AS(s.observe_branch(user_rec(1)), Error);
  s.command(cmd::Start{});
  s.command(cmd::Stop{});
  try {
    s.observe_boundary(BoundaryDirection::Enter, Address{0x401000});
    FAIL("expected SessionNotActive");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SessionNotActive);
  }
}

TEST_CASE("lbr session snapshot is newest first") {
  SessionParams p;
  p.mode = TraceMode::LbrOnly;
  p.lbr_capacity = 4;
  p.user_region = kUser;
  TraceSession s(p);
  s.command(cmd::Start{});
  for (std::uint64_t i = 1; i <= 5; ++i) s.observe_branch(user_rec(i));
  CHECK(s.command(cmd::ReadLbr{}).records ==
        std::vector<BranchRecord>{user_rec(5), user_rec(4), user_rec(3), user_rec(2)});
}

TEST_CASE("six records at threshold six become one drained batch") {
  TraceSession s(bts_params(8, 6));
  s.command(cmd::Start{});
  for (std::uint64_t i = 1; i <= 6; ++i) s.observe_branch(user_rec(i));
  REQUIRE(s.drained_batches().size() == 1);
  CHECK(s.drained_batches()[0].size() == 6);
  CHECK(s.bts()->index() == 0);
  CHECK(s.stats().drain_count == 1);
  // DrainBts hands over sink batches and the buffer tail together.
  CHECK(s.command(cmd::DrainBts{}).records.size() == 6);
  CHECK(s.drained_batches().empty());
  CHECK(s.command(cmd::DrainBts{}).records.empty());
}

TEST_CASE("pure kernel records are gated") {
  TraceSession s(bts_params(8, 6));
  s.command(cmd::Start{});
  s.observe_branch(BranchRecord{Address{0xffffffff81000000}, Address{0xffffffff81000040}, true, false});
  CHECK(s.bts()->index() == 0);
  CHECK(s.stats().records_dropped_gating == 1);
  CHECK(s.stats().records_emitted == 0);
}

TEST_CASE("a record leaving the user region is gated too") {
  TraceSession s(bts_params(8, 6));
  s.command(cmd::Start{});
  s.observe_branch(BranchRecord{Address{0x401000}, Address{0x600000}, true, false});
  CHECK(s.stats().records_dropped_gating == 1);
}

TEST_CASE("boundary noise bypasses gating") {
  TraceSession s(bts_params(64, 60, 2));
  s.command(cmd::Start{});
  s.observe_boundary(BoundaryDirection::Enter, Address{0x40100f});
  s.observe_boundary(BoundaryDirection::Exit, Address{0x40100f});
  const auto recs = s.command(cmd::DrainBts{}).records;
  REQUIRE(recs.size() == 4);
  for (const BranchRecord& r : recs) CHECK(r.kernel_mode);
  CHECK(recs[0].source == Address{0x40100f});
  CHECK_FALSE(kUser.contains(recs[0].target));
  CHECK_FALSE(kUser.contains(recs[1].target));
  CHECK_FALSE(kUser.contains(recs[2].source));
  CHECK_FALSE(kUser.contains(recs[3].source));
  CHECK(s.stats().noise_records == 4);
}

TEST_CASE("zero noise injects nothing") {
  TraceSession s(bts_params(64, 60, 0));
  s.command(cmd::Start{});
  s.observe_boundary(BoundaryDirection::Enter, Address{0x40100f});
  CHECK(s.bts()->index() == 0);
}

TEST_CASE("user region reaching kernel noise addresses is rejected") {
  SessionParams p = bts_params(8, 6, 2);
  p.user_region = AddressRange{Address{0}, Address{0xffffffffffffffff}};
  TraceSession s;
  CHECK(code_of(s, cmd::Configure{p}) == ErrorCode::BadParams);
}

TEST_CASE("both mode feeds lbr and bts from one stream") {
  SessionParams p = bts_params(16, 16);
  p.mode = TraceMode::Both;
  p.lbr_capacity = 4;
  TraceSession s(p);
  s.command(cmd::Start{});
  for (std::uint64_t i = 1; i <= 6; ++i) s.observe_branch(user_rec(i));
  CHECK(s.command(cmd::ReadLbr{}).records.size() == 4);
  CHECK(s.command(cmd::DrainBts{}).records.size() == 6);
}

TEST_CASE("default threshold is capacity minus 64, at least 1") {
  CHECK(default_bts_threshold(1024) == 960);
  CHECK(default_bts_threshold(65) == 1);
  CHECK(default_bts_threshold(8) == 1);
  CHECK(parse_trace_mode("both") == TraceMode::Both);
  CHECK_FALSE(parse_trace_mode("pt").has_value());
}

}  // TEST_SUITE
