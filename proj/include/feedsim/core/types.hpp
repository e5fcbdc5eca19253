#pragma once

#include <compare>
#include <cstdint>
#include <string_view>

namespace feedsim {

// Prices are integer price-units: 1 unit = $0.0001, 1 tick = 100 units.
using Price = std::int64_t;
using Quantity = std::int64_t;
using OrderId = std::int64_t;
using AgentId = std::int32_t;

inline constexpr Price kUnitsPerDollar = 10'000;
inline constexpr Price kTick = 100;
inline constexpr AgentId kNoAgent = -1;

enum class Side : std::uint8_t { buy, sell };

constexpr Side opposite(Side s) noexcept { return s == Side::buy ? Side::sell : Side::buy; }
constexpr std::string_view to_string(Side s) noexcept { return s == Side::buy ? "BUY" : "SELL"; }

/// Nanoseconds since midnight of the simulated trading day.
struct SimTime {
  std::int64_t ns = 0;

  static constexpr SimTime from_seconds(std::int64_t s) noexcept { return SimTime{s * 1'000'000'000}; }
  static constexpr SimTime from_minutes(std::int64_t m) noexcept { return from_seconds(m * 60); }

  constexpr double seconds() const noexcept { return static_cast<double>(ns) * 1e-9; }

  friend constexpr auto operator<=>(SimTime, SimTime) = default;
  friend constexpr SimTime operator+(SimTime t, std::int64_t d_ns) noexcept { return SimTime{t.ns + d_ns}; }
  friend constexpr SimTime operator-(SimTime t, std::int64_t d_ns) noexcept { return SimTime{t.ns - d_ns}; }
  friend constexpr std::int64_t operator-(SimTime a, SimTime b) noexcept { return a.ns - b.ns; }
};

inline constexpr std::int64_t kNsPerSecond = 1'000'000'000;
inline constexpr std::int64_t kNsPerMinute = 60 * kNsPerSecond;

/// One order as seen on the exchange's raw order stream.
struct OrderRecord {
  Side side = Side::buy;
  Price price = 0;
  Quantity quantity = 0;
  SimTime timestamp{};

  friend bool operator==(const OrderRecord&, const OrderRecord&) = default;
};

/// A decoded trade request. The exchange prices it on arrival at the
/// opposite best plus `aggressiveness` (buys) or minus it (sells).
struct OrderIntent {
  Side side = Side::buy;
  Quantity quantity = 0;
  Price aggressiveness = 0;

  friend bool operator==(const OrderIntent&, const OrderIntent&) = default;
};

}  // namespace feedsim
