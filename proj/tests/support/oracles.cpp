#include "oracles.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <limits>
#include <numeric>

namespace feedsim::testing {

GradCheckResult check_parameter_grads(const nn::ParameterList& params, const std::function<double()>& loss,
                                      const std::function<void()>& analytic, double h, double floor) {
  nn::zero_grad(params);
  analytic();
  GradCheckResult r;
  for (auto* p : params) {
    for (std::size_t i = 0; i < p->value.size(); ++i) {
      const double saved = p->value[i];
      p->value[i] = saved + h;
      const double up = loss();
      p->value[i] = saved - h;
      const double down = loss();
      p->value[i] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double a = p->grad[i];
      const double rel = std::abs(a - numeric) / std::max(std::abs(a) + std::abs(numeric), floor);
      r.max_rel_error = std::max(r.max_rel_error, rel);
      ++r.checked;
    }
  }
  return r;
}

double check_input_grad(std::vector<double>& x, const std::function<double()>& loss, const std::vector<double>& grad,
                        double h, double floor) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + h;
    const double up = loss();
    x[i] = saved - h;
    const double down = loss();
    x[i] = saved;
    const double numeric = (up - down) / (2.0 * h);
    worst = std::max(worst, std::abs(grad[i] - numeric) / std::max(std::abs(grad[i]) + std::abs(numeric), floor));
  }
  return worst;
}

double naive_mean(const std::vector<double>& v) {
  long double s = 0;
  for (double x : v) s += x;
  return static_cast<double>(s / static_cast<long double>(v.size()));
}

double naive_median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

PairedTest paired_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  PairedTest r;
  r.n = a.size();
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  r.mean_diff = naive_mean(d);
  double ss = 0.0;
  for (double x : d) ss += (x - r.mean_diff) * (x - r.mean_diff);
  r.sd_diff = r.n > 1 ? std::sqrt(ss / static_cast<double>(r.n - 1)) : 0.0;
  if (r.n < 2) return r;
  if (r.sd_diff == 0.0) {
    // Degenerate: no variation. Only a strictly positive constant shift counts.
    r.t = r.mean_diff > 0 ? std::numeric_limits<double>::infinity() : 0.0;
    r.p_one_sided = r.mean_diff > 0 ? 0.0 : 1.0;
    return r;
  }
  r.t = r.mean_diff / (r.sd_diff / std::sqrt(static_cast<double>(r.n)));
  boost::math::students_t dist(static_cast<double>(r.n - 1));
  r.p_one_sided = boost::math::cdf(boost::math::complement(dist, r.t));
  return r;
}

BruteTally brute_aggregate(const std::vector<agents::ScoredPost>& posts) {
  BruteTally t;
  const social::SentimentLabel labels[] = {social::SentimentLabel::negative, social::SentimentLabel::neutral,
                                           social::SentimentLabel::positive};
  for (std::size_t k = 0; k < 3; ++k) {
    double s = 0.0;
    for (const auto& p : posts) {
      if (p.label == labels[k]) s += p.confidence;
    }
    t.score[k] = s;
  }
  const double best = *std::max_element(t.score.begin(), t.score.end());
  int at_best = 0;
  std::size_t who = 1;
  for (std::size_t k = 0; k < 3; ++k) {
    if (t.score[k] == best) {
      ++at_best;
      who = k;
    }
  }
  t.winner = at_best == 1 ? labels[who] : social::SentimentLabel::neutral;
  return t;
}

td3::Observation ToyControl::reset() {
  t_ = 0;
  x_ = rng_.uniform(-1.0, 1.0);
  return observe();
}

double ToyControl::step(const td3::Action& a, td3::Observation& next, bool& done) {
  x_ = std::clamp(x_ + 0.5 * a.trade + 0.05 * rng_.normal(), -1.0, 1.0);
  ++t_;
  done = t_ >= horizon_;
  next = observe();
  return 1.0 - std::abs(x_);
}

double evaluate_toy(const std::function<td3::Action(const td3::Observation&)>& policy, std::uint64_t seed,
                    std::size_t episodes) {
  ToyControl env(seed);
  double total = 0.0;
  std::size_t steps = 0;
  for (std::size_t e = 0; e < episodes; ++e) {
    auto obs = env.reset();
    bool done = false;
    while (!done) {
      td3::Observation next;
      total += env.step(policy(obs), next, done);
      ++steps;
      obs = std::move(next);
    }
  }
  return total / static_cast<double>(steps);
}

td3::Td3Config toy_config() {
  td3::Td3Config c;
  c.seq_len = 1;
  c.depth = 1;
  c.gamma = 0.9;
  c.buffer_capacity = 10'000;
  return c;
}

ToyOutcome run_toy(std::uint64_t seed, std::size_t train_steps, const td3::Td3Config& cfg) {
  SeedTree tree(seed);
  td3::Td3Learner learner(cfg, ToyControl::dims(), tree.seed("learner"));
  ToyControl env(tree.seed("env"));
  auto obs = env.reset();
  for (std::size_t i = 0; i < train_steps; ++i) {
    const auto a = learner.act(obs, true);
    td3::Observation next;
    bool done = false;
    const double r = env.step(a, next, done);
    learner.observe({obs, a, r, next, done});
    learner.train_step();
    obs = done ? env.reset() : next;
  }
  learner.set_frozen(true);
  ToyOutcome out;
  const auto eval_seed = tree.seed("eval");
  out.learned = evaluate_toy([&](const td3::Observation& o) { return learner.act(o, false); }, eval_seed);
  RngStream pick(tree.seed("random"));
  out.random = evaluate_toy([&](const td3::Observation&) { return td3::Action{pick.uniform(-2.0, 2.0), 0.0}; },
                            eval_seed);
  return out;
}

}  // namespace feedsim::testing
