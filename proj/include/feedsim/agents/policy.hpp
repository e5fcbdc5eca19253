#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "feedsim/core/types.hpp"
#include "feedsim/simkernel/messages.hpp"
#include "feedsim/socialfeed/post.hpp"
#include "feedsim/td3/types.hpp"

namespace feedsim::agents {

inline constexpr Quantity kHoldingsLimit = 1000;
inline constexpr Price kDefaultValueOffset = 1'000'000'000;  // $100,000

struct OpenOrder {
  Side side = Side::buy;
  Quantity remaining = 0;
};

/// Cash in price-units (may go negative), shares held, and live orders.
class PortfolioState {
 public:
  explicit PortfolioState(Quantity limit = kHoldingsLimit) : limit_(limit) {}

  Price cash() const noexcept { return cash_; }
  Quantity holdings() const noexcept { return holdings_; }
  Quantity limit() const noexcept { return limit_; }
  const std::map<OrderId, OpenOrder>& open_orders() const noexcept { return open_; }

  Quantity open_buy_quantity() const noexcept;
  Quantity open_sell_quantity() const noexcept;
  Quantity net_open_quantity() const noexcept { return open_buy_quantity() - open_sell_quantity(); }

  void add_open(OrderId id, Side side, Quantity qty);
  /// Throws std::logic_error if the fill would breach the holdings limit.
  void apply_fill(const sim::FillReport& fill);
  void apply_cancel(OrderId id, Quantity cancelled);
  void remove_open(OrderId id) { open_.erase(id); }

  /// Test hook: set a position directly.
  void set_position(Price cash, Quantity holdings);

 private:
  Price cash_ = 0;
  Quantity holdings_ = 0;
  Quantity limit_;
  std::map<OrderId, OpenOrder> open_;
};

/// cash + holdings * mid, using `fallback_mid` when the book has no mid.
/// Throws NumericFault if holdings are nonzero and neither mid exists.
Price mark_to_market(const PortfolioState& p, std::optional<Price> mid, std::optional<Price> fallback_mid = {});

/// 100 * ((new + offset) / (prev + offset) - 1); NumericFault when either
/// offset-adjusted value is not positive.
double compute_reward(Price prev_value, Price new_value, Price offset = kDefaultValueOffset);

/// Quantity clamp so that, even if every open order on the same side fills,
/// holdings stay within the limit.
Quantity allowed_quantity(const PortfolioState& p, Side side) noexcept;

/// round(1000 * a0) shares, side by sign, clamped to the holdings limit.
/// A zero quantity means no order.
OrderIntent decode_action(const td3::Action& a, const PortfolioState& p, Price aggressiveness = 0);

/// Seven equal bins over [-1, 1].
social::SentimentPhrase quantize_sentiment(double a1) noexcept;

struct ScoredPost {
  const social::Post* post = nullptr;
  social::SentimentLabel label = social::SentimentLabel::neutral;
  double confidence = 0.0;
};

struct SentimentTally {
  social::SentimentLabel winner = social::SentimentLabel::neutral;
  std::array<double, 3> score{};  // indexed by SentimentLabel

  double operator[](social::SentimentLabel l) const { return score[static_cast<std::size_t>(l)]; }
};

/// Confidence-weighted sum per label. A unique maximum wins; any tie for
/// the maximum (including the empty input) yields neutral.
SentimentTally aggregate_sentiment(std::span<const ScoredPost> posts);

/// positive -> buy `lot`, negative -> sell `lot`, clamped to the limit.
OrderIntent sentiment_trade(social::SentimentLabel label, const PortfolioState& p, Quantity lot = 100,
                            Price aggressiveness = 0);

struct ObservationScale {
  Price price_scale = 50 * kTick;  // price offsets in units of 50 ticks
  double price_clip = 2.0;
  double log_qty_norm = 11.512935464920228;  // log1p(1e5)
};

/// Per snapshot and level: bid price, bid size, ask price, ask size.
/// Prices are offsets from the latest defined snapshot mid; sizes are
/// log1p(q) / log1p(1e5) clipped to [0, 1]. Padded snapshots and empty
/// levels contribute zeros. Internal: holdings and net open quantity over
/// the limit.
td3::Observation build_observation(const sim::MarketDataResponse& md, const PortfolioState& p,
                                   const ObservationScale& scale = {});

}  // namespace feedsim::agents
