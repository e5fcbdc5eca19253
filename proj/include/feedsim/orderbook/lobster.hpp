#pragma once

// LOBSTER message files: headerless CSV with six columns
//   time (decimal seconds after midnight), event type, order id, size,
//   price (dollars x 10000), direction (1 buy, -1 sell).

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "feedsim/core/types.hpp"

namespace feedsim::orderbook {

enum class LobsterEvent : std::uint8_t {
  submit = 1,
  partial_cancel = 2,
  remove = 3,
  execute_visible = 4,
  execute_hidden = 5,
  cross = 6,
  halt = 7,
};

struct LobsterMessage {
  SimTime time{};
  LobsterEvent event = LobsterEvent::submit;
  OrderId order_id = 0;
  Quantity size = 0;
  Price price = 0;
  Side direction = Side::buy;

  friend bool operator==(const LobsterMessage&, const LobsterMessage&) = default;
};

/// Parses one row. Seconds are converted exactly from their decimal text,
/// rounding half-up at the nanosecond. `row_number` is only used in errors.
LobsterMessage parse_lobster_message(std::string_view csv_row, std::size_t row_number = 1);

/// Canonical row text with nine fractional digits; parse(format(m)) == m.
std::string format_lobster_message(const LobsterMessage& m);

/// Reads a whole file; blank lines are skipped, rows must be time-ordered.
std::vector<LobsterMessage> read_lobster_stream(std::istream& in);
std::vector<LobsterMessage> read_lobster_file(const std::filesystem::path& path);
void write_lobster_file(const std::filesystem::path& path, const std::vector<LobsterMessage>& messages);

}  // namespace feedsim::orderbook
