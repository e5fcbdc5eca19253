#include "feedsim/orderbook/lobster.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>

#include "feedsim/core/error.hpp"

namespace feedsim::orderbook {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n')) {
    s.remove_suffix(1);
  }
  return s;
}

std::int64_t parse_int(std::string_view field, std::size_t row, const char* name) {
  field = trim(field);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(row, std::string("bad ") + name + " field '" + std::string(field) + "'");
  }
  return v;
}

SimTime parse_seconds(std::string_view field, std::size_t row) {
  field = trim(field);
  const auto dot = field.find('.');
  const std::string_view whole = field.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : field.substr(dot + 1);
  if (whole.empty()) throw ParseError(row, "bad time field '" + std::string(field) + "'");
  const std::int64_t secs = parse_int(whole, row, "time");
  if (secs < 0) throw ParseError(row, "negative time");
  std::int64_t ns = 0;
  int digits = 0;
  bool round_up = false;
  for (std::size_t i = 0; i < frac.size(); ++i) {
    const char c = frac[i];
    if (c < '0' || c > '9') throw ParseError(row, "bad time field '" + std::string(field) + "'");
    if (digits < 9) {
      ns = ns * 10 + (c - '0');
      ++digits;
    } else if (digits == 9) {
      round_up = c >= '5';
      ++digits;
    }
  }
  for (; digits < 9; ++digits) ns *= 10;
  if (round_up) ++ns;
  return SimTime{secs * kNsPerSecond + ns};
}

}  // namespace

LobsterMessage parse_lobster_message(std::string_view csv_row, std::size_t row_number) {
  std::array<std::string_view, 6> fields;
  std::size_t n = 0;
  std::size_t start = 0;
  const std::string_view row = trim(csv_row);
  while (true) {
    const auto comma = row.find(',', start);
    const auto field = row.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    if (n == fields.size()) throw ParseError(row_number, "expected 6 fields, got more");
    fields[n++] = field;
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (n != fields.size()) {
    throw ParseError(row_number, "expected 6 fields, got " + std::to_string(n));
  }

  LobsterMessage m;
  m.time = parse_seconds(fields[0], row_number);
  const auto type = parse_int(fields[1], row_number, "event type");
  if (type < 1 || type > 7) throw ParseError(row_number, "unknown event type " + std::to_string(type));
  m.event = static_cast<LobsterEvent>(type);
  m.order_id = parse_int(fields[2], row_number, "order id");
  m.size = parse_int(fields[3], row_number, "size");
  m.price = parse_int(fields[4], row_number, "price");
  const auto dir = parse_int(fields[5], row_number, "direction");
  if (dir == 1) {
    m.direction = Side::buy;
  } else if (dir == -1) {
    m.direction = Side::sell;
  } else {
    throw ParseError(row_number, "direction must be 1 or -1");
  }
  if (m.size < 0) throw ParseError(row_number, "negative size");
  return m;
}

std::string format_lobster_message(const LobsterMessage& m) {
  char buf[128];
  const auto secs = m.time.ns / kNsPerSecond;
  const auto frac = m.time.ns % kNsPerSecond;
  const int len = std::snprintf(buf, sizeof buf, "%lld.%09lld,%d,%lld,%lld,%lld,%d",
                                static_cast<long long>(secs), static_cast<long long>(frac),
                                static_cast<int>(m.event), static_cast<long long>(m.order_id),
                                static_cast<long long>(m.size), static_cast<long long>(m.price),
                                m.direction == Side::buy ? 1 : -1);
  return std::string(buf, static_cast<std::size_t>(len));
}

std::vector<LobsterMessage> read_lobster_stream(std::istream& in) {
  std::vector<LobsterMessage> out;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    auto m = parse_lobster_message(line, row);
    if (!out.empty() && m.time < out.back().time) throw ParseError(row, "rows out of time order");
    out.push_back(m);
  }
  return out;
}

std::vector<LobsterMessage> read_lobster_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open message file " + path.string());
  return read_lobster_stream(in);
}

void write_lobster_file(const std::filesystem::path& path, const std::vector<LobsterMessage>& messages) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write message file " + path.string());
  for (const auto& m : messages) out << format_lobster_message(m) << '\n';
}

}  // namespace feedsim::orderbook
