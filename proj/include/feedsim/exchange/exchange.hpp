#pragma once

#include <cstddef>
#include <deque>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "feedsim/orderbook/lobster.hpp"
#include "feedsim/orderbook/order_book.hpp"
#include "feedsim/simkernel/kernel.hpp"

namespace feedsim::exchange {

/// Fixed-capacity ring of the most recent orders seen by the exchange.
class OrderStreamTape {
 public:
  explicit OrderStreamTape(std::size_t capacity = 10);
  void push(const OrderRecord& record);
  /// Oldest first.
  std::vector<OrderRecord> contents() const;
  std::size_t size() const noexcept { return size_; }
  std::size_t capacity() const noexcept { return ring_.size(); }

 private:
  std::vector<OrderRecord> ring_;
  std::size_t head_ = 0;  // next write slot
  std::size_t size_ = 0;
};

struct ExchangeConfig {
  std::string symbol = "SYN";
  SimTime market_open = SimTime::from_seconds(34'200);  // 09:30
  SimTime market_close = SimTime::from_seconds(57'600);
  std::int64_t snapshot_interval_ns = 5 * kNsPerSecond;
  std::size_t snapshot_depth = 10;
  std::size_t tape_capacity = 10;
  Price fee_per_share = 0;  // no fixed transaction costs by default
  sim::LatencyModel latency{};
};

struct ReplayCounters {
  std::size_t applied = 0;
  std::size_t unknown_reference = 0;  // cancel/execute of an id not in the book
  std::size_t duplicate_submit = 0;
  std::size_t hidden_executions = 0;
  std::size_t halts = 0;
};

/// Replays historical flow into the book, matches agent orders on arrival,
/// samples depth snapshots on a fixed grid from the open, and answers
/// market-data requests.
class ExchangeAgent : public sim::Agent {
 public:
  ExchangeAgent(ExchangeConfig config, std::shared_ptr<const std::vector<orderbook::LobsterMessage>> flow);

  void on_start(sim::Kernel& kernel) override;
  void on_event(sim::Kernel& kernel, const sim::Event& event) override;

  /// Applies one historical message. Executions (types 4 and 6) reduce the
  /// referenced resting order rather than re-matching. Agent orders hit by a
  /// historical submit are reported through `kernel` when it is non-null.
  void replay_step(const orderbook::LobsterMessage& msg, sim::Kernel* kernel = nullptr);

  /// Matches an agent order at the current clock. Zero-quantity intents are
  /// dropped silently.
  void handle_agent_order(sim::Kernel& kernel, AgentId owner, OrderId order_id, const OrderIntent& intent);

  /// Last `levels` grid snapshots at `depth`; missing history is left-padded
  /// with zero snapshots. `depth` may not exceed the configured snapshot depth.
  sim::MarketDataResponse market_data(std::size_t levels, std::size_t depth, SimTime as_of) const;

  /// Records the current book as the next grid snapshot.
  void take_snapshot(SimTime at);

  const orderbook::LimitOrderBook& book() const noexcept { return book_; }
  const OrderStreamTape& tape() const noexcept { return tape_; }
  const std::vector<orderbook::BookSnapshot>& snapshot_history() const noexcept { return snapshots_; }
  const ReplayCounters& counters() const noexcept { return counters_; }
  const ExchangeConfig& config() const noexcept { return config_; }
  /// Most recent defined book mid, if one ever existed.
  std::optional<Price> last_defined_mid() const noexcept { return last_mid_; }
  std::size_t agent_orders_received() const noexcept { return agent_orders_received_; }

 private:
  void report_fills(sim::Kernel* kernel, const std::vector<orderbook::Fill>& fills, AgentId taker_owner,
                    OrderId taker_id, Side taker_side);
  void note_mid();

  ExchangeConfig config_;
  std::shared_ptr<const std::vector<orderbook::LobsterMessage>> flow_;
  orderbook::LimitOrderBook book_;
  OrderStreamTape tape_;
  std::vector<orderbook::BookSnapshot> snapshots_;
  std::unordered_map<OrderId, Side> agent_order_side_;
  ReplayCounters counters_;
  std::optional<Price> last_mid_;
  std::size_t agent_orders_received_ = 0;
};

}  // namespace feedsim::exchange
