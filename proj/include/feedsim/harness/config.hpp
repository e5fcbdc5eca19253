#pragma once

#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "feedsim/agents/traders.hpp"
#include "feedsim/exchange/exchange.hpp"
#include "feedsim/harness/synthetic.hpp"
#include "feedsim/socialfeed/http_backends.hpp"
#include "feedsim/socialfeed/pregenerate.hpp"
#include "feedsim/td3/types.hpp"

namespace feedsim::harness {

enum class Mode : std::uint8_t { rl_solo, sentiment_solo, indirect, direct };

std::string_view to_string(Mode m) noexcept;
/// Throws ConfigError on unknown names.
Mode parse_mode(std::string_view s);

constexpr bool has_rl(Mode m) noexcept { return m != Mode::sentiment_solo; }
constexpr bool has_sentiment(Mode m) noexcept { return m != Mode::rl_solo; }

struct Protocol {
  std::size_t training_passes = 5;
  SimTime in_sample_start = SimTime::from_seconds(34'200);
  std::int64_t in_sample_minutes = 60;
  std::int64_t oos_gap_minutes = 0;  // out-of-sample starts this long after in-sample ends
  std::int64_t oos_minutes = 30;

  SimTime in_sample_end() const noexcept { return in_sample_start + in_sample_minutes * kNsPerMinute; }
  SimTime oos_start() const noexcept { return in_sample_end() + oos_gap_minutes * kNsPerMinute; }
  SimTime oos_end() const noexcept { return oos_start() + oos_minutes * kNsPerMinute; }
};

struct GeneratorOptions {
  std::string kind = "template";  // template | http
  social::HttpTextGen::Options http{};
};

struct ClassifierOptions {
  std::string kind = "lexicon";  // lexicon | http
  social::HttpEndpoint http{};
};

struct FeedOptions {
  std::optional<std::filesystem::path> archive;  // read instead of generating
  std::size_t posts_per_minute = 100;
  std::size_t context = 10;
  double analyst_share = 0.5;
  int max_retries = 3;
  std::optional<std::uint64_t> seed;  // defaults to one derived from the run seed
  GeneratorOptions generator{};
};

struct ExperimentConfig {
  Mode mode = Mode::indirect;
  std::string symbol = "SYN";
  std::uint64_t seed = 1;
  std::vector<std::uint64_t> seeds;  // explicit per-trial seeds; overrides seed/trials
  std::size_t trials = 16;
  std::size_t workers = 1;
  Protocol protocol{};

  std::optional<std::filesystem::path> lobster_file;
  std::optional<SyntheticConfig> synthetic;

  exchange::ExchangeConfig exchange{};
  td3::Td3Config td3{};
  agents::RlAgentConfig rl{};
  agents::SentimentAgentConfig sentiment{};
  FeedOptions feed{};
  ClassifierOptions classifier{};

  std::filesystem::path out_dir = "out";
  bool write_metrics = false;

  std::vector<std::uint64_t> trial_seeds() const;
  /// Throws ConfigError on inconsistent settings.
  void validate() const;
};

/// Unknown keys anywhere are rejected. Relative paths resolve against
/// `base_dir`.
ExperimentConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
/// Throws ConfigError if unreadable or invalid.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Accepts seconds after midnight or "HH:MM[:SS]".
SimTime parse_clock(const nlohmann::json& v);
/// "HH:MM:SS".
std::string format_clock(SimTime t);

/// The feed window is everything an agent may sample in either phase.
social::PregenConfig feed_pregen_config(const ExperimentConfig& cfg);

}  // namespace feedsim::harness
