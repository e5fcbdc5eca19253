#pragma once

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "feedsim/core/types.hpp"
#include "feedsim/orderbook/order_book.hpp"

namespace feedsim::sim {

struct Wakeup {
  std::int64_t tag = 0;
};

struct OrderSubmission {
  OrderId order_id = 0;
  AgentId owner = kNoAgent;
  OrderIntent intent{};
};

struct CancelRequest {
  OrderId order_id = 0;
  AgentId owner = kNoAgent;
};

/// One execution of an agent's order; one report per fill, never averaged.
struct FillReport {
  OrderId order_id = 0;
  Side side = Side::buy;
  Price price = 0;
  Quantity quantity = 0;
  Price fee = 0;
  SimTime executed_at{};
};

struct CancelReport {
  OrderId order_id = 0;
  Quantity cancelled = 0;
};

/// The exchange could not price or accept the order; nothing of it is live.
struct OrderRejected {
  OrderId order_id = 0;
};

struct MarketDataRequest {
  std::int32_t levels = 20;  // L snapshots
  std::int32_t depth = 10;   // D price levels per side
};

struct MarketDataResponse {
  std::vector<orderbook::BookSnapshot> snapshots;  // oldest first, left-padded
  std::size_t padded = 0;                          // leading zero snapshots
  std::vector<OrderRecord> tape;                   // oldest first
  std::optional<Price> current_mid;                // book mid at as_of
  SimTime as_of{};
};

using MarketDataPtr = std::shared_ptr<const MarketDataResponse>;

/// Exchange-internal: apply historical message `index`.
struct ReplayTick {
  std::size_t index = 0;
};

/// Exchange-internal: take the next grid snapshot.
struct SnapshotTick {};

using Payload = std::variant<Wakeup, OrderSubmission, CancelRequest, FillReport, CancelReport,
                             OrderRejected, MarketDataRequest, MarketDataPtr, ReplayTick, SnapshotTick>;

/// Stable content digest used by trace hashing.
std::uint64_t digest(const Payload& payload) noexcept;

}  // namespace feedsim::sim
