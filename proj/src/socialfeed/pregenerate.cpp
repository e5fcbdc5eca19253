#include "feedsim/socialfeed/pregenerate.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <stdexcept>

#include "feedsim/core/error.hpp"
#include "feedsim/socialfeed/prompts.hpp"

namespace feedsim::social {

void PregenConfig::validate() const {
  if (end < start) throw std::invalid_argument("feed window ends before it starts");
  if (posts_per_minute == 0) throw std::invalid_argument("posts_per_minute must be positive");
  if (!(analyst_share >= 0.0 && analyst_share <= 1.0)) throw std::invalid_argument("analyst_share must lie in [0, 1]");
  if (max_retries < 0) throw std::invalid_argument("max_retries must be non-negative");
}

std::vector<OrderRecord> submissions(const std::vector<orderbook::LobsterMessage>& flow) {
  std::vector<OrderRecord> out;
  for (const auto& m : flow) {
    if (m.event == orderbook::LobsterEvent::submit) out.push_back({m.direction, m.price, m.size, m.time});
  }
  return out;
}

FeedStore pregenerate_feed(const std::vector<OrderRecord>& orders, const PregenConfig& cfg, TextGenBackend& backend,
                           PregenReport* report) {
  cfg.validate();
  PregenReport rep;
  FeedStore store;
  SeedTree seeds(cfg.seed);
  RngStream pick_rng = seeds.stream("select");
  RngStream author_rng = seeds.stream("author");
  RngStream text_rng = seeds.stream("text");
  auto by_time = [](const OrderRecord& o, SimTime t) { return o.timestamp < t; };
  std::size_t serial = 0;

  for (SimTime minute = cfg.start; minute < cfg.end; minute = minute + kNsPerMinute) {
    const SimTime next = std::min(minute + kNsPerMinute, cfg.end);
    const auto lo = static_cast<std::size_t>(
        std::lower_bound(orders.begin(), orders.end(), minute, by_time) - orders.begin());
    const auto hi = static_cast<std::size_t>(
        std::lower_bound(orders.begin(), orders.end(), next, by_time) - orders.begin());
    const std::size_t take = std::min(cfg.posts_per_minute, hi - lo);
    for (std::size_t k : pick_rng.sample_indices(hi - lo, take)) {
      const std::size_t i = lo + k;
      const std::size_t first = i >= cfg.context ? i - cfg.context : 0;
      GenerationRequest req;
      req.symbol = cfg.symbol;
      req.orders.assign(orders.begin() + static_cast<std::ptrdiff_t>(first),
                        orders.begin() + static_cast<std::ptrdiff_t>(i + 1));
      const bool analyst = author_rng.bernoulli(cfg.analyst_share) || i + 1 >= orders.size();
      if (analyst) {
        req.author = AuthorKind::analyst;
        req.prompt = build_analyst_prompt(req.orders);
      } else {
        req.author = AuthorKind::trader;
        req.requested = sentiment_for_following(orders[i + 1].side);
        req.prompt = build_trader_prompt(req.orders, *req.requested);
      }
      req.seed = text_rng.next_u64();
      ++rep.requested;

      std::optional<std::string> text;
      for (int attempt = 0; attempt <= cfg.max_retries && !text; ++attempt) {
        if (attempt > 0) ++rep.retries;
        try {
          text = backend.generate(req);
          if (text->empty()) text.reset();
        } catch (const BackendError& e) {
          if (attempt == cfg.max_retries) {
            std::cerr << "feed: skipping post at t=" << orders[i].timestamp.ns << "ns: " << e.what() << '\n';
          }
        }
      }
      if (!text) {
        ++rep.gaps;
        continue;
      }
      char id[48];
      std::snprintf(id, sizeof id, "%s-%07zu", cfg.symbol.c_str(), serial++);
      store.add(Post{id, cfg.symbol, orders[i].timestamp, req.author, std::move(*text)});
      ++rep.generated;
    }
  }
  if (report) *report = rep;
  return store;
}

void write_feed_jsonl(std::ostream& out, const FeedStore& store) {
  for (const auto& p : store.posts()) {
    nlohmann::ordered_json j;
    j["post_id"] = p.post_id;
    j["symbol"] = p.symbol;
    j["post_time_ns"] = p.post_time.ns;
    j["author_kind"] = std::string(to_string(p.author));
    j["text"] = p.text;
    out << j.dump() << '\n';
  }
}

FeedStore read_feed_jsonl(std::istream& in) {
  FeedStore store;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      Post p;
      p.post_id = j.at("post_id").get<std::string>();
      p.symbol = j.at("symbol").get<std::string>();
      p.post_time = SimTime{j.at("post_time_ns").get<std::int64_t>()};
      p.author = parse_author_kind(j.at("author_kind").get<std::string>());
      p.text = j.at("text").get<std::string>();
      if (p.text.empty()) throw std::invalid_argument("empty text");
      store.add(std::move(p));
    } catch (const std::exception& e) {
      throw DataError("feed line " + std::to_string(row) + ": " + e.what());
    }
  }
  return store;
}

void save_feed(const std::filesystem::path& path, const FeedStore& store) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write feed file " + path.string());
  write_feed_jsonl(out, store);
}

FeedStore load_feed(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open feed file " + path.string());
  return read_feed_jsonl(in);
}

}  // namespace feedsim::social
