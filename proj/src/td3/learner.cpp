#include "feedsim/td3/learner.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <stdexcept>

#include "feedsim/core/error.hpp"
#include "feedsim/nn/checkpoint.hpp"

namespace feedsim::td3 {

namespace {

void copy_values(const nn::ParameterList& from, const nn::ParameterList& to) {
  soft_update(from, to, 1.0);
}

nn::AdamConfig adam_config(const Td3Config& cfg) {
  nn::AdamConfig a;
  a.lr = cfg.lr;
  return a;
}

}  // namespace

Action select_action(const Policy& actor, const Observation& obs, bool explore, double sigma, RngStream& rng) {
  Action a = actor.act(obs);
  if (explore) {
    a.trade += rng.normal(0.0, sigma);
    a.sentiment += rng.normal(0.0, sigma);
  }
  return clamp_action(a);
}

std::vector<double> compute_targets(Batch batch, const QFunction& critic1_target, const QFunction& critic2_target,
                                    const Policy& actor_target, const Td3Config& cfg, RngStream& rng) {
  std::vector<double> y;
  y.reserve(batch.size());
  const double c = cfg.policy_noise_clip;
  for (const Transition* t : batch) {
    Action a = actor_target.act(t->next_state);
    a.trade += std::clamp(rng.normal(0.0, cfg.policy_sigma), -c, c);
    a.sentiment += std::clamp(rng.normal(0.0, cfg.policy_sigma), -c, c);
    a = clamp_action(a);
    const double q = std::min(critic1_target.value(t->next_state, a), critic2_target.value(t->next_state, a));
    y.push_back(t->reward + (t->done ? 0.0 : cfg.gamma * q));
  }
  return y;
}

double update_critic(CriticNet& critic, nn::Adam& opt, Batch batch, std::span<const double> targets) {
  if (batch.size() != targets.size() || batch.empty()) throw std::invalid_argument("critic batch/target mismatch");
  nn::zero_grad(opt.parameters());
  const double n = static_cast<double>(batch.size());
  double loss = 0.0;
  nn::Mlp::Trace trace;
  for (std::size_t k = 0; k < batch.size(); ++k) {
    const double q = critic.forward(batch[k]->state, batch[k]->action, &trace);
    const double err = q - targets[k];
    loss += err * err;
    critic.backward(trace, 2.0 * err / n);
  }
  opt.step();
  return loss / n;
}

double update_actor(ActorNet& actor, nn::Adam& opt, const QFunction& critic, Batch batch) {
  if (batch.empty()) throw std::invalid_argument("empty actor batch");
  nn::zero_grad(opt.parameters());
  const double n = static_cast<double>(batch.size());
  double loss = 0.0;
  ActorNet::Trace trace;
  for (const Transition* t : batch) {
    const Action a = actor.forward(t->state, &trace);
    ActionGrad dq{};
    loss -= critic.value_and_action_grad(t->state, a, dq);
    actor.backward(trace, {-dq[0] / n, -dq[1] / n});
  }
  opt.step();
  return loss / n;
}

void soft_update(const nn::ParameterList& net, const nn::ParameterList& target, double tau) {
  if (net.size() != target.size()) throw std::invalid_argument("soft_update: parameter count mismatch");
  for (std::size_t k = 0; k < net.size(); ++k) {
    if (!net[k]->value.same_shape(target[k]->value)) {
      throw std::invalid_argument("soft_update: shape mismatch at " + net[k]->name);
    }
  }
  for (std::size_t k = 0; k < net.size(); ++k) {
    auto src = net[k]->value.span();
    auto dst = target[k]->value.span();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = tau * src[i] + (1.0 - tau) * dst[i];
  }
}

double parameter_distance(const nn::ParameterList& net, const nn::ParameterList& target) {
  if (net.size() != target.size()) throw std::invalid_argument("parameter_distance: count mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < net.size(); ++k) {
    auto a = net[k]->value.span();
    auto b = target[k]->value.span();
    if (a.size() != b.size()) throw std::invalid_argument("parameter_distance: shape mismatch");
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  }
  return std::sqrt(s);
}

Td3Learner::Td3Learner(const Td3Config& cfg, const NetworkDims& dims, std::uint64_t seed)
    : cfg_((cfg.validate(), cfg)),
      rng_(SeedTree(seed).seed("learner")),
      actor_("actor", dims, cfg.embed, cfg.width, cfg.blocks),
      actor_target_("actor_target", dims, cfg.embed, cfg.width, cfg.blocks),
      critic1_("critic1", dims, cfg.width, cfg.blocks),
      critic2_("critic2", dims, cfg.width, cfg.blocks),
      critic1_target_("critic1_target", dims, cfg.width, cfg.blocks),
      critic2_target_("critic2_target", dims, cfg.width, cfg.blocks),
      actor_opt_(actor_.parameters(), adam_config(cfg)),
      critic1_opt_(critic1_.parameters(), adam_config(cfg)),
      critic2_opt_(critic2_.parameters(), adam_config(cfg)),
      buffer_(cfg.buffer_capacity) {
  SeedTree tree(seed);
  auto r_actor = tree.stream("init/actor");
  auto r_c1 = tree.stream("init/critic1");
  auto r_c2 = tree.stream("init/critic2");
  actor_.init_uniform(r_actor);
  critic1_.init_uniform(r_c1);
  critic2_.init_uniform(r_c2);
  copy_values(actor_.parameters(), actor_target_.parameters());
  copy_values(critic1_.parameters(), critic1_target_.parameters());
  copy_values(critic2_.parameters(), critic2_target_.parameters());
}

Action Td3Learner::act(const Observation& obs, bool explore) {
  return select_action(actor_, obs, explore && !frozen_, cfg_.explore_sigma, rng_);
}

Td3Metrics Td3Learner::train_step() {
  Td3Metrics m;
  m.step = critic_updates_;
  if (frozen_ || buffer_.size() < cfg_.batch) return m;
  for (std::size_t u = 0; u < cfg_.updates_per_step; ++u) {
    auto sample = buffer_.sample(cfg_.batch, rng_);
    const Batch batch(sample);
    auto y = compute_targets(batch, critic1_target_, critic2_target_, actor_target_, cfg_, rng_);
    m.critic1_loss = update_critic(critic1_, critic1_opt_, batch, y);
    m.critic2_loss = update_critic(critic2_, critic2_opt_, batch, y);
    ++critic_updates_;
    m.actor_loss.reset();
    if (critic_updates_ % static_cast<std::int64_t>(cfg_.policy_freq) == 0) {
      m.actor_loss = update_actor(actor_, actor_opt_, critic1_, batch);
      ++actor_updates_;
      soft_update(actor_.parameters(), actor_target_.parameters(), cfg_.tau);
      soft_update(critic1_.parameters(), critic1_target_.parameters(), cfg_.tau);
      soft_update(critic2_.parameters(), critic2_target_.parameters(), cfg_.tau);
    }
  }
  m.trained = true;
  m.step = critic_updates_;
  m.target_drift = parameter_distance(actor_.parameters(), actor_target_.parameters());
  return m;
}

nn::ParameterList Td3Learner::all_parameters() {
  nn::ParameterList out;
  for (auto* net : {&actor_, &actor_target_}) {
    auto p = net->parameters();
    out.insert(out.end(), p.begin(), p.end());
  }
  for (auto* net : {&critic1_, &critic2_, &critic1_target_, &critic2_target_}) {
    auto p = net->parameters();
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

void Td3Learner::save(const std::filesystem::path& path) { nn::save_checkpoint(path, all_parameters()); }

void Td3Learner::load(const std::filesystem::path& path) { nn::load_checkpoint(path, all_parameters()); }

MetricsCsv::MetricsCsv(const std::filesystem::path& path) : out_(path) {
  if (!out_) throw DataError("cannot open metrics file " + path.string());
  out_ << "step,critic1_loss,critic2_loss,actor_loss,reward\n";
}

void MetricsCsv::append(const Td3Metrics& m, double reward) {
  out_ << std::setprecision(10) << m.step << ',' << m.critic1_loss << ',' << m.critic2_loss << ',';
  if (m.actor_loss) out_ << *m.actor_loss;
  out_ << ',' << reward << '\n';
}

}  // namespace feedsim::td3
