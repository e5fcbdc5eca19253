#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "feedsim/agents/policy.hpp"
#include "feedsim/simkernel/kernel.hpp"
#include "feedsim/socialfeed/backends.hpp"
#include "feedsim/socialfeed/feed_store.hpp"
#include "feedsim/td3/learner.hpp"

namespace feedsim::agents {

/// Wakeup spacing: interval * (1 + U(-jitter, +jitter)).
struct Cadence {
  std::int64_t interval_ns = 30 * kNsPerSecond;
  double jitter = 0.1;

  std::int64_t draw(RngStream& rng) const;
  void validate() const;
};

/// Common order plumbing for the two traders.
class TraderBase : public sim::Agent {
 public:
  TraderBase(std::string name, AgentId exchange, SimTime window_start, SimTime window_end, Cadence cadence,
             sim::LatencyModel latency);

  void on_event(sim::Kernel& kernel, const sim::Event& event) override;

  const PortfolioState& portfolio() const noexcept { return portfolio_; }
  PortfolioState& portfolio() noexcept { return portfolio_; }
  std::size_t wakeups() const noexcept { return wakeups_; }
  std::size_t orders_sent() const noexcept { return orders_sent_; }
  std::size_t fills() const noexcept { return fills_; }
  SimTime window_start() const noexcept { return window_start_; }
  SimTime window_end() const noexcept { return window_end_; }

 protected:
  virtual void on_wakeup(sim::Kernel& kernel) = 0;
  virtual void on_market_data(sim::Kernel&, const sim::MarketDataResponse&) {}

  void schedule_first(sim::Kernel& kernel, SimTime at);
  void cancel_all(sim::Kernel& kernel);
  void submit(sim::Kernel& kernel, const OrderIntent& intent);
  bool in_window(SimTime t) const noexcept { return t >= window_start_ && t < window_end_; }

  AgentId exchange_;
  Cadence cadence_;
  sim::LatencyModel latency_;

 private:
  PortfolioState portfolio_;
  SimTime window_start_;
  SimTime window_end_;
  RngStream* cadence_rng_ = nullptr;
  std::int64_t order_counter_ = 0;
  std::size_t wakeups_ = 0;
  std::size_t orders_sent_ = 0;
  std::size_t fills_ = 0;
};

struct RlAgentConfig {
  Cadence cadence{30 * kNsPerSecond, 0.1};
  sim::LatencyModel latency{};
  Price value_offset = kDefaultValueOffset;
  Price aggressiveness = 2 * kTick;
  std::int32_t levels = 20;
  std::int32_t depth = 10;
  bool training = true;  // store transitions, update online, explore
  bool post = false;     // direct mode: one post per action
  ObservationScale scale{};
};

struct RlEpisodeStats {
  std::size_t actions = 0;
  std::size_t posts = 0;
  std::size_t post_failures = 0;
  std::size_t updates = 0;
  std::vector<double> rewards;
};

/// Observes (cancel, request market data), rewards the previous action,
/// trains, acts, and optionally posts.
class RlAgent : public TraderBase {
 public:
  RlAgent(std::string name, AgentId exchange, SimTime window_start, SimTime window_end, RlAgentConfig cfg,
          td3::Td3Learner& learner, std::string symbol, social::FeedSession* feed = nullptr,
          social::TextGenBackend* generator = nullptr, td3::MetricsCsv* metrics = nullptr);

  void on_start(sim::Kernel& kernel) override;

  /// Closes the episode at the window end: values the portfolio, stores the
  /// terminal transition (training only), and returns the final value.
  Price finish(const sim::MarketDataResponse& md);

  const RlEpisodeStats& stats() const noexcept { return stats_; }
  const RlAgentConfig& config() const noexcept { return cfg_; }

 protected:
  void on_wakeup(sim::Kernel& kernel) override;
  void on_market_data(sim::Kernel& kernel, const sim::MarketDataResponse& md) override;

 private:
  Price value_now(const sim::MarketDataResponse& md);
  void reward_previous(const td3::Observation& obs, Price value, bool done);
  void make_post(sim::Kernel& kernel, const sim::MarketDataResponse& md, const td3::Action& a);

  RlAgentConfig cfg_;
  td3::Td3Learner& learner_;
  std::string symbol_;
  social::FeedSession* feed_;
  social::TextGenBackend* generator_;
  td3::MetricsCsv* metrics_;
  RngStream* post_rng_ = nullptr;
  bool awaiting_data_ = false;
  std::optional<Price> last_mid_;
  std::optional<td3::Observation> prev_obs_;
  td3::Action prev_action_{};
  Price prev_value_ = 0;
  RlEpisodeStats stats_;
};

struct SentimentAgentConfig {
  Cadence cadence{60 * kNsPerSecond, 0.1};
  sim::LatencyModel latency{};
  Quantity lot = 100;
  Price aggressiveness = 2 * kTick;
  social::SamplingConfig sampling{};
};

struct SentimentEpisodeStats {
  std::size_t decisions = 0;
  std::size_t posts_seen = 0;
  std::size_t rl_posts_seen = 0;
  std::size_t classify_failures = 0;
  std::size_t buys = 0;
  std::size_t sells = 0;
};

/// Samples the feed seen since its last action, scores each post, and
/// trades a lot in the direction of the winning label.
class SentimentAgent : public TraderBase {
 public:
  SentimentAgent(std::string name, AgentId exchange, SimTime window_start, SimTime window_end,
                 SentimentAgentConfig cfg, const social::FeedSession& feed, social::SentimentBackend& classifier);

  void on_start(sim::Kernel& kernel) override;
  const SentimentEpisodeStats& stats() const noexcept { return stats_; }

 protected:
  void on_wakeup(sim::Kernel& kernel) override;

 private:
  SentimentAgentConfig cfg_;
  const social::FeedSession& feed_;
  social::SentimentBackend& classifier_;
  RngStream* sample_rng_ = nullptr;
  SimTime last_action_{};
  SentimentEpisodeStats stats_;
};

}  // namespace feedsim::agents
