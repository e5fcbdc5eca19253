#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "feedsim/agents/traders.hpp"
#include "feedsim/harness/config.hpp"
#include "feedsim/orderbook/lobster.hpp"
#include "feedsim/socialfeed/backends.hpp"
#include "feedsim/socialfeed/feed_store.hpp"
#include "feedsim/td3/learner.hpp"

namespace feedsim::harness {

inline constexpr std::string_view kRlAgentName = "rl_agent";
inline constexpr std::string_view kSentimentAgentName = "sentiment_agent";
inline constexpr std::string_view kPhaseInSample = "in_sample";
inline constexpr std::string_view kPhaseOos = "oos";

struct ResultRow {
  Mode mode = Mode::indirect;
  std::string symbol;
  std::size_t trial = 0;
  std::string phase;
  std::string agent;
  Price value = 0;  // price-units; dollars = value / 10^4

  double dollars() const noexcept { return static_cast<double>(value) / static_cast<double>(kUnitsPerDollar); }
  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

/// Shared, read-only inputs of every trial.
struct RunInputs {
  std::shared_ptr<const std::vector<orderbook::LobsterMessage>> flow;
  std::shared_ptr<const social::FeedStore> feed;  // null when no agent reads it
  social::PregenReport feed_report{};
};

/// Backends are created per trial so trials share no mutable state.
struct BackendFactory {
  std::function<std::unique_ptr<social::TextGenBackend>()> generator;
  std::function<std::unique_ptr<social::SentimentBackend>()> classifier;
};

BackendFactory default_backends(const ExperimentConfig& cfg);

/// Loads or synthesizes the flow, then loads or pre-generates the feed when
/// the mode has a sentiment agent. Throws DataError / BackendError.
RunInputs prepare_inputs(const ExperimentConfig& cfg, const BackendFactory& backends);

struct EpisodeWindow {
  SimTime start{};
  SimTime end{};
};

struct EpisodeResult {
  std::optional<Price> rl_value;
  std::optional<Price> sentiment_value;
  agents::RlEpisodeStats rl{};
  agents::SentimentEpisodeStats sentiment{};
  std::size_t rl_orders = 0;
  std::size_t sentiment_orders = 0;
  std::size_t injected_posts = 0;
  std::uint64_t events = 0;
  std::uint64_t trace_hash = 0;
  std::vector<sim::TraceRecord> trace;  // filled when requested
};

struct EpisodeOptions {
  bool training = false;
  bool record_trace = false;
  td3::MetricsCsv* metrics = nullptr;
};

/// One pass over `window`: fresh kernel, exchange replaying the flow from
/// its first row, and the agents the mode calls for.
EpisodeResult run_episode(const ExperimentConfig& cfg, const RunInputs& inputs, td3::Td3Learner* learner,
                          social::TextGenBackend* generator, social::SentimentBackend* classifier,
                          EpisodeWindow window, std::uint64_t kernel_seed, const EpisodeOptions& options);

struct TrialResult {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::vector<ResultRow> rows;
  std::vector<EpisodeResult> training;
  std::optional<EpisodeResult> in_sample;
  std::optional<EpisodeResult> oos;
  std::int64_t learner_updates_before_eval = 0;
  std::int64_t learner_updates_after_eval = 0;
};

/// Fresh learner; training passes over the in-sample window; frozen
/// in-sample evaluation; frozen out-of-sample evaluation (skipped for
/// sentiment_solo).
TrialResult run_trial(const ExperimentConfig& cfg, const RunInputs& inputs, const BackendFactory& backends,
                      std::size_t trial, std::uint64_t seed);

/// All trials, `cfg.workers` at a time; rows ordered by trial.
std::vector<ResultRow> run_experiment(const ExperimentConfig& cfg, const RunInputs& inputs,
                                      const BackendFactory& backends, std::vector<TrialResult>* details = nullptr);

}  // namespace feedsim::harness
