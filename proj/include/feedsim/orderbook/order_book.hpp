#pragma once

#include <cstddef>
#include <functional>
#include <list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "feedsim/core/types.hpp"

namespace feedsim::orderbook {

/// Where an order came from: the historical file or a simulated agent.
struct Origin {
  AgentId agent = kNoAgent;

  static constexpr Origin historical() noexcept { return Origin{}; }
  static constexpr Origin from_agent(AgentId id) noexcept { return Origin{id}; }
  constexpr bool is_historical() const noexcept { return agent == kNoAgent; }
  friend bool operator==(const Origin&, const Origin&) = default;
};

struct Order {
  OrderId order_id = 0;
  std::string symbol;
  Side side = Side::buy;
  Price price = 0;
  Quantity quantity = 0;
  SimTime timestamp{};
  Origin origin{};

  friend bool operator==(const Order&, const Order&) = default;
};

struct Fill {
  OrderId taker_order_id = 0;
  OrderId maker_order_id = 0;
  Price price = 0;  // always the resting order's limit price
  Quantity quantity = 0;
  SimTime timestamp{};
  Origin maker_origin{};

  friend bool operator==(const Fill&, const Fill&) = default;
};

struct Level {
  Price price = 0;
  Quantity quantity = 0;
  friend bool operator==(const Level&, const Level&) = default;
};

/// Top-of-book view with exactly `depth` levels per side. Levels beyond the
/// book's actual depth are {0, 0}.
struct BookSnapshot {
  std::vector<Level> bids;  // descending price
  std::vector<Level> asks;  // ascending price
  std::optional<Price> mid;
  SimTime taken_at{};

  std::size_t depth() const noexcept { return bids.size(); }
  /// All-zero snapshot used to left-pad short histories.
  static BookSnapshot empty(std::size_t depth, SimTime at = {});
  friend bool operator==(const BookSnapshot&, const BookSnapshot&) = default;
};

class DuplicateOrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Price-time priority limit order book for one symbol.
///
/// Incoming orders match against the opposite side while marketable, at the
/// resting order's price, oldest first within a level. Any residual rests.
class LimitOrderBook {
 public:
  /// Throws DuplicateOrderError if `order.order_id` is live,
  /// std::invalid_argument on non-positive price or quantity.
  std::vector<Fill> submit_limit(const Order& order);

  /// Removes the whole order (qty empty) or reduces it by at most `qty`.
  /// Returns the shares actually removed; 0 for unknown ids.
  Quantity cancel(OrderId id, std::optional<Quantity> qty = std::nullopt);

  /// Reduces a resting order by an execution that happened elsewhere
  /// (historical replay). Same clamping semantics as cancel.
  Quantity execute_resting(OrderId id, Quantity qty);

  BookSnapshot snapshot(std::size_t depth) const;

  std::optional<Price> best_bid() const;
  std::optional<Price> best_ask() const;
  std::optional<Price> mid() const;

  bool contains(OrderId id) const { return index_.contains(id); }
  std::optional<Order> find(OrderId id) const;
  std::size_t order_count() const noexcept { return index_.size(); }
  std::size_t level_count(Side side) const noexcept;
  Quantity resting_quantity() const noexcept;

  /// Resting orders on one side in priority order (best level first, FIFO within).
  std::vector<Order> orders(Side side) const;

 private:
  using Queue = std::list<Order>;
  struct PriceLevel {
    Queue queue;
    Quantity total = 0;
  };
  using BidMap = std::map<Price, PriceLevel, std::greater<>>;
  using AskMap = std::map<Price, PriceLevel, std::less<>>;
  struct Locator {
    Side side;
    Price price;
    Queue::iterator it;
  };

  template <class Map>
  void match_against(Map& opposite, Order& taker, std::vector<Fill>& fills);
  template <class Map>
  void rest(Map& own, const Order& order);
  Quantity reduce(OrderId id, std::optional<Quantity> qty);

  BidMap bids_;
  AskMap asks_;
  std::unordered_map<OrderId, Locator> index_;
};

}  // namespace feedsim::orderbook
