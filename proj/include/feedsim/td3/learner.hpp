#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <vector>

#include "feedsim/core/rng.hpp"
#include "feedsim/nn/adam.hpp"
#include "feedsim/td3/networks.hpp"
#include "feedsim/td3/replay_buffer.hpp"

namespace feedsim::td3 {

using Batch = std::span<const Transition* const>;

/// pi(s) plus N(0, sigma^2) per component when exploring, clamped to range.
Action select_action(const Policy& actor, const Observation& obs, bool explore, double sigma, RngStream& rng);

/// y = r + gamma (1 - done) min(Q1'(s', a~), Q2'(s', a~)) with
/// a~ = clamp(pi'(s') + clip(N(0, policy_sigma^2), +-policy_noise_clip)).
std::vector<double> compute_targets(Batch batch, const QFunction& critic1_target, const QFunction& critic2_target,
                                    const Policy& actor_target, const Td3Config& cfg, RngStream& rng);

/// One Adam step on MSE(Q(s, a), y). Returns the pre-step loss.
double update_critic(CriticNet& critic, nn::Adam& opt, Batch batch, std::span<const double> targets);

/// One Adam step descending -mean Q(s, pi(s)); the critic is only read.
/// Returns the pre-step loss.
double update_actor(ActorNet& actor, nn::Adam& opt, const QFunction& critic, Batch batch);

/// target <- tau * net + (1 - tau) * target.
void soft_update(const nn::ParameterList& net, const nn::ParameterList& target, double tau);

/// L2 norm of (target - net) across all parameters.
double parameter_distance(const nn::ParameterList& net, const nn::ParameterList& target);

struct Td3Metrics {
  bool trained = false;
  std::int64_t step = 0;
  double critic1_loss = 0.0;
  double critic2_loss = 0.0;
  std::optional<double> actor_loss;
  double target_drift = 0.0;
};

class Td3Learner {
 public:
  Td3Learner(const Td3Config& cfg, const NetworkDims& dims, std::uint64_t seed);

  Action act(const Observation& obs, bool explore);
  void observe(Transition t) { buffer_.push(std::move(t)); }

  /// No-op (trained = false) while frozen or with fewer than `batch` transitions.
  Td3Metrics train_step();

  void set_frozen(bool frozen) noexcept { frozen_ = frozen; }
  bool frozen() const noexcept { return frozen_; }
  void clear_buffer() { buffer_.clear(); }

  const ReplayBuffer& buffer() const noexcept { return buffer_; }
  std::int64_t critic_updates() const noexcept { return critic_updates_; }
  std::int64_t actor_updates() const noexcept { return actor_updates_; }
  const Td3Config& config() const noexcept { return cfg_; }

  ActorNet& actor() noexcept { return actor_; }
  CriticNet& critic1() noexcept { return critic1_; }
  CriticNet& critic2() noexcept { return critic2_; }
  ActorNet& actor_target() noexcept { return actor_target_; }
  CriticNet& critic1_target() noexcept { return critic1_target_; }
  CriticNet& critic2_target() noexcept { return critic2_target_; }

  /// Live and target networks, in a fixed order (checkpoint layout).
  nn::ParameterList all_parameters();
  void save(const std::filesystem::path& path);
  void load(const std::filesystem::path& path);

 private:
  Td3Config cfg_;
  RngStream rng_;
  ActorNet actor_;
  ActorNet actor_target_;
  CriticNet critic1_;
  CriticNet critic2_;
  CriticNet critic1_target_;
  CriticNet critic2_target_;
  nn::Adam actor_opt_;
  nn::Adam critic1_opt_;
  nn::Adam critic2_opt_;
  ReplayBuffer buffer_;
  std::int64_t critic_updates_ = 0;
  std::int64_t actor_updates_ = 0;
  bool frozen_ = false;
};

/// Appends "step,critic1_loss,critic2_loss,actor_loss,reward" rows.
class MetricsCsv {
 public:
  explicit MetricsCsv(const std::filesystem::path& path);
  void append(const Td3Metrics& m, double reward);

 private:
  std::ofstream out_;
};

}  // namespace feedsim::td3
