#include "feedsim/orderbook/order_book.hpp"

#include <algorithm>

namespace feedsim::orderbook {

BookSnapshot BookSnapshot::empty(std::size_t depth, SimTime at) {
  BookSnapshot s;
  s.bids.assign(depth, Level{});
  s.asks.assign(depth, Level{});
  s.taken_at = at;
  return s;
}

namespace {

bool marketable(Side taker, Price limit, Price resting) {
  return taker == Side::buy ? resting <= limit : resting >= limit;
}

}  // namespace

template <class Map>
void LimitOrderBook::match_against(Map& opposite, Order& taker, std::vector<Fill>& fills) {
  while (taker.quantity > 0 && !opposite.empty()) {
    auto level_it = opposite.begin();
    if (!marketable(taker.side, taker.price, level_it->first)) break;
    PriceLevel& level = level_it->second;
    while (taker.quantity > 0 && !level.queue.empty()) {
      Order& maker = level.queue.front();
      const Quantity traded = std::min(taker.quantity, maker.quantity);
      fills.push_back(Fill{taker.order_id, maker.order_id, maker.price, traded, taker.timestamp,
                           maker.origin});
      taker.quantity -= traded;
      maker.quantity -= traded;
      level.total -= traded;
      if (maker.quantity == 0) {
        index_.erase(maker.order_id);
        level.queue.pop_front();
      }
    }
    if (level.queue.empty()) opposite.erase(level_it);
  }
}

template <class Map>
void LimitOrderBook::rest(Map& own, const Order& order) {
  PriceLevel& level = own[order.price];
  level.queue.push_back(order);
  level.total += order.quantity;
  index_.emplace(order.order_id, Locator{order.side, order.price, std::prev(level.queue.end())});
}

std::vector<Fill> LimitOrderBook::submit_limit(const Order& order) {
  if (order.quantity <= 0) throw std::invalid_argument("order quantity must be positive");
  if (order.price <= 0) throw std::invalid_argument("order price must be positive");
  if (index_.contains(order.order_id)) {
    throw DuplicateOrderError("duplicate live order id " + std::to_string(order.order_id));
  }
  std::vector<Fill> fills;
  Order taker = order;
  if (taker.side == Side::buy) {
    match_against(asks_, taker, fills);
    if (taker.quantity > 0) rest(bids_, taker);
  } else {
    match_against(bids_, taker, fills);
    if (taker.quantity > 0) rest(asks_, taker);
  }
  return fills;
}

Quantity LimitOrderBook::reduce(OrderId id, std::optional<Quantity> qty) {
  auto found = index_.find(id);
  if (found == index_.end()) return 0;
  if (qty && *qty <= 0) return 0;
  Locator loc = found->second;
  Order& order = *loc.it;
  const Quantity removed = qty ? std::min(*qty, order.quantity) : order.quantity;
  order.quantity -= removed;
  auto drop = [&](auto& side_map) {
    auto level_it = side_map.find(loc.price);
    level_it->second.total -= removed;
    if (order.quantity == 0) {
      level_it->second.queue.erase(loc.it);
      index_.erase(found);
      if (level_it->second.queue.empty()) side_map.erase(level_it);
    }
  };
  if (loc.side == Side::buy) {
    drop(bids_);
  } else {
    drop(asks_);
  }
  return removed;
}

Quantity LimitOrderBook::cancel(OrderId id, std::optional<Quantity> qty) { return reduce(id, qty); }

Quantity LimitOrderBook::execute_resting(OrderId id, Quantity qty) { return reduce(id, qty); }

BookSnapshot LimitOrderBook::snapshot(std::size_t depth) const {
  BookSnapshot s = BookSnapshot::empty(depth);
  std::size_t i = 0;
  for (auto it = bids_.begin(); it != bids_.end() && i < depth; ++it, ++i) {
    s.bids[i] = Level{it->first, it->second.total};
  }
  i = 0;
  for (auto it = asks_.begin(); it != asks_.end() && i < depth; ++it, ++i) {
    s.asks[i] = Level{it->first, it->second.total};
  }
  s.mid = mid();
  return s;
}

std::optional<Price> LimitOrderBook::best_bid() const {
  if (bids_.empty()) return std::nullopt;
  return bids_.begin()->first;
}

std::optional<Price> LimitOrderBook::best_ask() const {
  if (asks_.empty()) return std::nullopt;
  return asks_.begin()->first;
}

std::optional<Price> LimitOrderBook::mid() const {
  auto b = best_bid();
  auto a = best_ask();
  if (!b || !a) return std::nullopt;
  // floor division; prices are positive so truncation is floor
  return (*b + *a) / 2;
}

std::optional<Order> LimitOrderBook::find(OrderId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return *it->second.it;
}

std::size_t LimitOrderBook::level_count(Side side) const noexcept {
  return side == Side::buy ? bids_.size() : asks_.size();
}

Quantity LimitOrderBook::resting_quantity() const noexcept {
  Quantity total = 0;
  for (const auto& [p, level] : bids_) total += level.total;
  for (const auto& [p, level] : asks_) total += level.total;
  return total;
}

std::vector<Order> LimitOrderBook::orders(Side side) const {
  std::vector<Order> out;
  auto collect = [&](const auto& side_map) {
    for (const auto& [p, level] : side_map) {
      out.insert(out.end(), level.queue.begin(), level.queue.end());
    }
  };
  if (side == Side::buy) {
    collect(bids_);
  } else {
    collect(asks_);
  }
  return out;
}

}  // namespace feedsim::orderbook
