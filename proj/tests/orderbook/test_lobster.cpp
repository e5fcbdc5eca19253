#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "feedsim/core/error.hpp"
#include "feedsim/exchange/exchange.hpp"
#include "feedsim/orderbook/lobster.hpp"

using namespace feedsim;
using namespace feedsim::orderbook;

TEST(Lobster, ParsesRow) {
  const auto m = parse_lobster_message("34200.004241176,1,16113575,18,5853300,1");
  EXPECT_EQ(m.time.ns, 34'200'004'241'176);
  EXPECT_EQ(m.event, LobsterEvent::submit);
  EXPECT_EQ(m.order_id, 16113575);
  EXPECT_EQ(m.size, 18);
  EXPECT_EQ(m.price, 5853300);
  EXPECT_EQ(m.direction, Side::buy);
}

TEST(Lobster, TimeIsExactDecimal) {
  EXPECT_EQ(parse_lobster_message("1.1,3,1,1,1,-1").time.ns, 1'100'000'000);
  EXPECT_EQ(parse_lobster_message("5,3,1,1,1,-1").time.ns, 5'000'000'000);
  EXPECT_EQ(parse_lobster_message("0.0000000004,3,1,1,1,-1").time.ns, 0);
  EXPECT_EQ(parse_lobster_message("0.0000000005,3,1,1,1,-1").time.ns, 1);
  EXPECT_EQ(parse_lobster_message(" 2.5 , 4 ,7,10,100,-1\r").time.ns, 2'500'000'000);
}

TEST(Lobster, RejectsMalformedRowsWithRowNumber) {
  EXPECT_THROW(parse_lobster_message("1,1,1,1,1"), ParseError);
  EXPECT_THROW(parse_lobster_message("1,1,1,1,1,1,1"), ParseError);
  EXPECT_THROW(parse_lobster_message("1,8,1,1,1,1"), ParseError);
  EXPECT_THROW(parse_lobster_message("1,1,1,1,1,0"), ParseError);
  EXPECT_THROW(parse_lobster_message("1,1,x,1,1,1"), ParseError);
  EXPECT_THROW(parse_lobster_message("1,1,1,-5,1,1"), ParseError);
  EXPECT_THROW(parse_lobster_message("1.2a,1,1,1,1,1"), ParseError);
  try {
    parse_lobster_message("bad", 17);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 17u);
  }
}

TEST(Lobster, StreamSkipsBlankLinesAndChecksOrder) {
  std::istringstream ok("1,1,1,100,10000,1\n\n2,3,1,100,10000,1\n");
  EXPECT_EQ(read_lobster_stream(ok).size(), 2u);
  std::istringstream bad("2,1,1,100,10000,1\n1,3,1,100,10000,1\n");
  try {
    read_lobster_stream(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 2u);
  }
}

TEST(Lobster, FormatRoundTrips) {
  feedsim::RngStream rng(9);
  for (int i = 0; i < 500; ++i) {
    LobsterMessage m;
    m.time = SimTime{rng.uniform_int(0, 86'400LL * kNsPerSecond)};
    m.event = static_cast<LobsterEvent>(rng.uniform_int(1, 7));
    m.order_id = rng.uniform_int(-1, 1'000'000'000);
    m.size = rng.uniform_int(0, 100'000);
    m.price = rng.uniform_int(-1, 50'000'000);
    m.direction = rng.bernoulli(0.5) ? Side::buy : Side::sell;
    ASSERT_EQ(parse_lobster_message(format_lobster_message(m)), m);
  }
}

TEST(Lobster, FileRoundTripAndMissingFile) {
  const auto path = std::filesystem::temp_directory_path() / "feedsim_lobster_rt.csv";
  std::vector<LobsterMessage> v{{SimTime{1}, LobsterEvent::submit, 1, 100, 10000, Side::buy},
                                {SimTime{2}, LobsterEvent::remove, 1, 100, 10000, Side::buy}};
  write_lobster_file(path, v);
  EXPECT_EQ(read_lobster_file(path), v);
  std::filesystem::remove(path);
  EXPECT_THROW(read_lobster_file(path), DataError);
}

// The golden file and its expected final state were written out by hand.
namespace {

void expect_side(const LimitOrderBook& b, Side s, const std::vector<std::tuple<OrderId, Price, Quantity>>& want) {
  const auto got = b.orders(s);
  ASSERT_EQ(got.size(), want.size()) << to_string(s);
  for (std::size_t i = 0; i < want.size(); ++i) {
    EXPECT_EQ(got[i].order_id, std::get<0>(want[i])) << to_string(s) << " #" << i;
    EXPECT_EQ(got[i].price, std::get<1>(want[i])) << to_string(s) << " #" << i;
    EXPECT_EQ(got[i].quantity, std::get<2>(want[i])) << to_string(s) << " #" << i;
  }
}

}  // namespace

TEST(LobsterGolden, PreMarketStateAtOpen) {
  const auto msgs = read_lobster_file(std::filesystem::path(FEEDSIM_TEST_DATA) / "golden_messages.csv");
  ASSERT_EQ(msgs.size(), 50u);
  exchange::ExchangeAgent ex({}, nullptr);
  for (const auto& m : msgs) {
    if (m.time >= ex.config().market_open) break;
    ex.replay_step(m);
  }
  expect_side(ex.book(), Side::buy,
              {{1, 999900, 100}, {5, 999900, 150}, {3, 999800, 200}, {7, 999700, 250}});
  expect_side(ex.book(), Side::sell,
              {{2, 1000100, 200}, {6, 1000100, 50}, {9, 1000200, 100}, {8, 1000300, 250}});
  EXPECT_EQ(ex.book().mid(), 1000000);
  EXPECT_EQ(ex.counters().halts, 1u);
}

TEST(LobsterGolden, FinalState) {
  const auto msgs = read_lobster_file(std::filesystem::path(FEEDSIM_TEST_DATA) / "golden_messages.csv");
  exchange::ExchangeAgent ex({}, nullptr);
  for (const auto& m : msgs) ex.replay_step(m);
  expect_side(ex.book(), Side::buy,
              {{18, 999900, 50}, {3, 999800, 150}, {16, 999800, 100}, {7, 999700, 250}, {13, 999600, 150},
               {22, 999500, 100}});
  expect_side(ex.book(), Side::sell,
              {{17, 1000100, 150}, {23, 1000100, 100}, {15, 1000200, 300}, {8, 1000300, 150}, {21, 1000500, 250},
               {2, 1000600, 100}});
  const auto s = ex.book().snapshot(6);
  EXPECT_EQ(s.bids[0], (Level{999900, 50}));
  EXPECT_EQ(s.bids[1], (Level{999800, 250}));
  EXPECT_EQ(s.asks[0], (Level{1000100, 250}));
  EXPECT_EQ(s.mid, 1000000);
  EXPECT_EQ(ex.counters().applied, 44u);
  EXPECT_EQ(ex.counters().unknown_reference, 3u);
  EXPECT_EQ(ex.counters().hidden_executions, 1u);
  EXPECT_EQ(ex.counters().halts, 1u);
  EXPECT_EQ(ex.counters().duplicate_submit, 1u);
  const auto tape = ex.tape().contents();
  ASSERT_EQ(tape.size(), 10u);
  EXPECT_EQ(tape.front(), (OrderRecord{Side::sell, 1000400, 100, SimTime::from_seconds(34208)}));
  EXPECT_EQ(tape.back(), (OrderRecord{Side::sell, 1000600, 100, SimTime::from_seconds(34231)}));
}
