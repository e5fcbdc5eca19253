#include <gtest/gtest.h>

#include "feedsim/exchange/exchange.hpp"

using namespace feedsim;
using namespace feedsim::exchange;
using orderbook::LobsterEvent;
using orderbook::LobsterMessage;

namespace {

using Flow = std::vector<LobsterMessage>;

LobsterMessage row(std::int64_t sec, LobsterEvent e, OrderId id, Quantity q, Price px, Side s) {
  return {SimTime::from_seconds(sec), e, id, q, px, s};
}

/// Sends a scripted request to the exchange on each wakeup and records
/// everything the exchange sends back.
class Client : public sim::Agent {
 public:
  explicit Client(AgentId exchange) : sim::Agent("client"), exchange_(exchange) {}
  std::vector<sim::Payload> script;
  std::vector<sim::FillReport> fills;
  std::vector<sim::CancelReport> cancels;
  std::vector<OrderId> rejects;
  std::vector<sim::MarketDataPtr> data;

  void on_event(sim::Kernel& k, const sim::Event& e) override {
    if (const auto* w = std::get_if<sim::Wakeup>(&e.payload)) {
      k.send(id(), exchange_, script.at(static_cast<std::size_t>(w->tag)));
    } else if (const auto* f = std::get_if<sim::FillReport>(&e.payload)) {
      fills.push_back(*f);
    } else if (const auto* c = std::get_if<sim::CancelReport>(&e.payload)) {
      cancels.push_back(*c);
    } else if (const auto* r = std::get_if<sim::OrderRejected>(&e.payload)) {
      rejects.push_back(r->order_id);
    } else if (const auto* md = std::get_if<sim::MarketDataPtr>(&e.payload)) {
      data.push_back(*md);
    }
  }

 private:
  AgentId exchange_;
};

struct Rig {
  explicit Rig(Flow flow, ExchangeConfig cfg = {}) : kernel(5, SimTime::from_seconds(34'000)) {
    cfg.latency = {0, 0, 0};
    ex = &kernel.emplace_agent<ExchangeAgent>(cfg, std::make_shared<const Flow>(std::move(flow)));
    client = &kernel.emplace_agent<Client>(ex->id());
    kernel.set_latency(client->id(), {0, 0, 0});
  }
  void at(std::int64_t sec, sim::Payload p) {
    client->script.push_back(std::move(p));
    kernel.schedule(SimTime::from_seconds(sec), client->id(),
                    sim::Wakeup{static_cast<std::int64_t>(client->script.size() - 1)});
  }
  sim::Kernel kernel;
  ExchangeAgent* ex = nullptr;
  Client* client = nullptr;
};

Flow basic_book() {
  return {row(34'100, LobsterEvent::submit, 1, 100, 999'900, Side::buy),
          row(34'100, LobsterEvent::submit, 2, 100, 1'000'100, Side::sell),
          row(34'100, LobsterEvent::submit, 3, 200, 1'000'200, Side::sell)};
}

}  // namespace

TEST(Tape, KeepsMostRecentOldestFirst) {
  OrderStreamTape t(3);
  for (int i = 1; i <= 5; ++i) t.push(OrderRecord{Side::buy, i, 1, SimTime{i}});
  const auto c = t.contents();
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].price, 3);
  EXPECT_EQ(c[2].price, 5);
  EXPECT_THROW(OrderStreamTape(0), std::invalid_argument);
}

TEST(Exchange, AgentBuyPricedAtAskPlusAggressiveness) {
  Rig r(basic_book());
  r.at(34'300, sim::OrderSubmission{77, r.client->id(), OrderIntent{Side::buy, 150, kTick}});
  r.kernel.run_until(SimTime::from_seconds(34'400));
  // Limit = 100.01 + 1 tick = 100.02: takes 100 @ 100.01 then 50 @ 100.02.
  ASSERT_EQ(r.client->fills.size(), 2u);
  EXPECT_EQ(r.client->fills[0].price, 1'000'100);
  EXPECT_EQ(r.client->fills[0].quantity, 100);
  EXPECT_EQ(r.client->fills[1].price, 1'000'200);
  EXPECT_EQ(r.client->fills[1].quantity, 50);
  EXPECT_EQ(r.client->fills[1].order_id, 77);
  EXPECT_EQ(r.ex->book().find(3)->quantity, 150);
  const auto tape = r.ex->tape().contents();
  EXPECT_EQ(tape.back(), (OrderRecord{Side::buy, 1'000'200, 150, SimTime::from_seconds(34'300)}));
}

TEST(Exchange, ResidualRestsAndHistoricalFlowCanFillIt) {
  Flow f = basic_book();
  f.push_back(row(34'500, LobsterEvent::submit, 4, 80, 999'800, Side::sell));
  Rig r(f);
  r.at(34'300, sim::OrderSubmission{9, r.client->id(), OrderIntent{Side::buy, 300, 0}});
  r.kernel.run_until(SimTime::from_seconds(34'600));
  // 100 @ 100.01 fills; 200 rest at 100.01; the historical sell at 99.98 takes 80 @ 100.01.
  ASSERT_EQ(r.client->fills.size(), 2u);
  EXPECT_EQ(r.client->fills[1].quantity, 80);
  EXPECT_EQ(r.client->fills[1].price, 1'000'100);
  EXPECT_EQ(r.client->fills[1].side, Side::buy);
  EXPECT_EQ(r.ex->book().find(9)->quantity, 120);
}

TEST(Exchange, CancelReportsRemovedQuantity) {
  Rig r(basic_book());
  r.at(34'300, sim::OrderSubmission{9, r.client->id(), OrderIntent{Side::buy, 300, 0}});
  r.at(34'310, sim::CancelRequest{9, r.client->id()});
  r.at(34'320, sim::CancelRequest{9, r.client->id()});
  r.kernel.run_until(SimTime::from_seconds(34'400));
  ASSERT_EQ(r.client->cancels.size(), 1u);
  EXPECT_EQ(r.client->cancels[0].cancelled, 200);
  EXPECT_FALSE(r.ex->book().contains(9));
}

TEST(Exchange, RejectsWhenNothingCanPriceTheOrder) {
  Rig r({});
  r.at(34'300, sim::OrderSubmission{1, r.client->id(), OrderIntent{Side::sell, 100, 0}});
  r.at(34'301, sim::OrderSubmission{2, r.client->id(), OrderIntent{Side::sell, 0, 0}});
  r.kernel.run_until(SimTime::from_seconds(34'400));
  EXPECT_EQ(r.client->rejects, (std::vector<OrderId>{1}));
  EXPECT_EQ(r.ex->agent_orders_received(), 1u);
}

TEST(Exchange, RejectsIdOfLiveOrder) {
  Rig r(basic_book());
  r.at(34'300, sim::OrderSubmission{1, r.client->id(), OrderIntent{Side::sell, 40, 0}});
  r.kernel.run_until(SimTime::from_seconds(34'400));
  EXPECT_EQ(r.client->rejects, (std::vector<OrderId>{1}));
  EXPECT_TRUE(r.client->fills.empty());
  EXPECT_EQ(r.ex->book().find(1)->quantity, 100);
}

TEST(Exchange, OneSidedBookJoinsOwnSide) {
  Rig r({row(34'100, LobsterEvent::submit, 1, 100, 999'900, Side::buy)});
  r.at(34'300, sim::OrderSubmission{5, r.client->id(), OrderIntent{Side::buy, 100, 3 * kTick}});
  r.kernel.run_until(SimTime::from_seconds(34'400));
  EXPECT_EQ(r.ex->book().find(5)->price, 999'900);
}

TEST(Exchange, SnapshotsOnGridFromOpenAndPaddedMarketData) {
  ExchangeConfig cfg;
  cfg.snapshot_interval_ns = 60 * kNsPerSecond;
  cfg.snapshot_depth = 3;
  Rig r(basic_book(), cfg);
  r.at(34'200 + 150, sim::MarketDataRequest{5, 2});
  r.kernel.run_until(SimTime::from_seconds(34'200 + 200));
  const auto& hist = r.ex->snapshot_history();
  ASSERT_EQ(hist.size(), 4u);  // at 0, 60, 120, 180 seconds after the open
  EXPECT_EQ(hist[0].taken_at, cfg.market_open);
  EXPECT_EQ(hist[1].taken_at - hist[0].taken_at, 60 * kNsPerSecond);
  ASSERT_EQ(r.client->data.size(), 1u);
  const auto& md = *r.client->data[0];
  ASSERT_EQ(md.snapshots.size(), 5u);
  EXPECT_EQ(md.padded, 2u);
  EXPECT_EQ(md.snapshots[0], orderbook::BookSnapshot::empty(2));
  EXPECT_EQ(md.snapshots[2].bids.size(), 2u);
  EXPECT_EQ(md.snapshots[2].bids[0], (orderbook::Level{999'900, 100}));
  EXPECT_EQ(md.snapshots[2].asks[1], (orderbook::Level{1'000'200, 200}));
  EXPECT_EQ(md.current_mid, 1'000'000);
  EXPECT_EQ(md.tape.size(), 3u);
  EXPECT_THROW(r.ex->market_data(1, 4, SimTime{}), std::invalid_argument);
  EXPECT_THROW(r.ex->market_data(0, 1, SimTime{}), std::invalid_argument);
}

TEST(Exchange, ReplayCountsUnknownReferences) {
  ExchangeAgent ex({}, nullptr);
  ex.replay_step(row(1, LobsterEvent::remove, 5, 100, 10'000, Side::buy));
  ex.replay_step(row(1, LobsterEvent::execute_visible, 5, 100, 10'000, Side::buy));
  ex.replay_step(row(1, LobsterEvent::submit, 6, 0, 10'000, Side::buy));
  ex.replay_step(row(1, LobsterEvent::execute_hidden, 0, 100, 10'000, Side::buy));
  EXPECT_EQ(ex.counters().unknown_reference, 3u);
  EXPECT_EQ(ex.counters().hidden_executions, 1u);
  EXPECT_EQ(ex.book().order_count(), 0u);
}

TEST(Exchange, FeePerShareReported) {
  ExchangeConfig cfg;
  cfg.fee_per_share = 3;
  Rig r(basic_book(), cfg);
  r.at(34'300, sim::OrderSubmission{501, r.client->id(), OrderIntent{Side::sell, 40, 0}});
  r.kernel.run_until(SimTime::from_seconds(34'400));
  ASSERT_EQ(r.client->fills.size(), 1u);
  EXPECT_EQ(r.client->fills[0].fee, 120);
  EXPECT_EQ(r.client->fills[0].price, 999'900);
}

TEST(Exchange, LastDefinedMidSurvivesEmptySide) {
  Flow f = basic_book();
  f.push_back(row(34'150, LobsterEvent::remove, 1, 100, 999'900, Side::buy));
  Rig r(f);
  r.kernel.run_until(SimTime::from_seconds(34'200));
  EXPECT_FALSE(r.ex->book().mid().has_value());
  EXPECT_EQ(r.ex->last_defined_mid(), 1'000'000);
}
