#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "feedsim/orderbook/lobster.hpp"
#include "feedsim/socialfeed/backends.hpp"
#include "feedsim/socialfeed/feed_store.hpp"

namespace feedsim::social {

struct PregenConfig {
  std::string symbol = "SYN";
  SimTime start{};  // first minute boundary covered
  SimTime end{};    // exclusive
  std::size_t posts_per_minute = 100;
  std::size_t context = 10;  // predecessors fed with the selected order
  double analyst_share = 0.5;
  int max_retries = 3;  // extra attempts after a backend failure
  std::uint64_t seed = 0;

  void validate() const;
};

struct PregenReport {
  std::size_t requested = 0;
  std::size_t generated = 0;
  std::size_t gaps = 0;  // posts skipped after exhausting retries
  std::size_t retries = 0;
};

/// Order submissions (type 1 rows) of a message stream, in file order.
std::vector<OrderRecord> submissions(const std::vector<orderbook::LobsterMessage>& flow);

/// For every minute in [start, end): up to posts_per_minute submissions of
/// that minute drawn without replacement, each with up to `context`
/// predecessors. Post time is the selected order's timestamp.
FeedStore pregenerate_feed(const std::vector<OrderRecord>& orders, const PregenConfig& cfg, TextGenBackend& backend,
                           PregenReport* report = nullptr);

/// One JSON object per line: {post_id, symbol, post_time_ns, author_kind, text}.
void write_feed_jsonl(std::ostream& out, const FeedStore& store);
FeedStore read_feed_jsonl(std::istream& in);
void save_feed(const std::filesystem::path& path, const FeedStore& store);
/// Throws DataError on a missing or malformed file.
FeedStore load_feed(const std::filesystem::path& path);

}  // namespace feedsim::social
