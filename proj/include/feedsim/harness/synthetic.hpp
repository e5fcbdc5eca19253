#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "feedsim/orderbook/lobster.hpp"

namespace feedsim::harness {

/// Order-flow generator. A fundamental price follows a geometric random
/// walk whose drift may flip sign (regime switching); passive limit orders
/// are placed a geometric number of ticks behind it, so the book mid is
/// pulled back toward it. Marketable orders lean toward the drift side.
/// Arrivals are Poisson, resting orders cancel after exponential
/// lifetimes. The generator keeps its own book: a crossing order is written
/// as execution rows against the resting orders it hits, followed by a
/// submission row for any residual.
struct SyntheticConfig {
  std::string regime = "custom";
  SimTime start = SimTime::from_seconds(9 * 3600);  // pre-market begins
  SimTime end = SimTime::from_seconds(11 * 3600);
  double initial_price = 100.0;      // dollars
  double drift_per_hour = 0.0;       // log-return per hour
  double volatility_per_hour = 0.003;  // log-return std per sqrt(hour)
  double switch_rate_per_hour = 0.0;   // drift sign flips (Poisson)
  double arrival_rate = 2.0;           // orders per second
  double marketable_share = 0.15;
  double marketable_bias = 0.15;       // P(buy) = 0.5 + bias * sign(drift)
  double passive_bias = 0.0;           // same lean for passive submissions
  std::int64_t marketable_reach_ticks = 1;
  double level_decay = 0.35;           // geometric parameter of tick offsets
  double cancel_lifetime_s = 60.0;
  double partial_cancel_share = 0.1;
  std::int64_t max_lots = 5;           // quantity = 100 * U{1..max_lots}
  std::int64_t initial_levels = 10;    // per side at start
  std::uint64_t seed = 1;

  void validate() const;
};

/// Named calibrations used by the test suite and examples.
SyntheticConfig regime_preset(std::string_view name);
std::vector<std::string> regime_names();

std::vector<orderbook::LobsterMessage> generate_flow(const SyntheticConfig& cfg);

}  // namespace feedsim::harness
