#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace feedsim::td3 {

/// Hyperparameters of the learner and its networks.
struct Td3Config {
  std::size_t seq_len = 20;
  std::size_t depth = 10;
  std::size_t embed = 6;
  std::size_t width = 32;
  std::size_t blocks = 3;
  double lr = 0.01;
  double explore_sigma = 0.2;
  double policy_sigma = 0.4;
  double policy_noise_clip = 0.5;
  std::size_t batch = 32;
  std::size_t policy_freq = 2;
  double tau = 0.02;
  double gamma = 0.99;
  std::size_t buffer_capacity = 100'000;
  /// Gradient steps per stored transition when training online.
  std::size_t updates_per_step = 1;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

struct NetworkDims {
  std::size_t seq_len = 20;
  std::size_t step_features = 40;
  std::size_t internal = 2;

  /// Four features (bid price, bid size, ask price, ask size) per level.
  static NetworkDims for_book(const Td3Config& cfg) { return {cfg.seq_len, 4 * cfg.depth, 2}; }
  std::size_t flat_size() const noexcept { return seq_len * step_features + internal; }
};

struct Observation {
  std::vector<double> internal;     // holdings and open-order net quantity, scaled
  std::vector<double> environment;  // seq_len rows of step_features, oldest first
};

/// trade in [-2, 2] (x1000 shares, sign = side); sentiment in [-1, 1].
struct Action {
  double trade = 0.0;
  double sentiment = 0.0;

  friend bool operator==(const Action&, const Action&) = default;
};

inline constexpr double kTradeBound = 2.0;
inline constexpr double kSentimentBound = 1.0;

Action clamp_action(Action a) noexcept;
bool in_range(const Action& a) noexcept;

struct Transition {
  Observation state;
  Action action;
  double reward = 0.0;  // percent change
  Observation next_state;
  bool done = false;
};

}  // namespace feedsim::td3
