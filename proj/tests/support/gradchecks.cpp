#include "gradchecks.hpp"

#include <algorithm>

#include "feedsim/nn/layers.hpp"
#include "feedsim/td3/networks.hpp"
#include "oracles.hpp"

namespace feedsim::testing {

using nn::Vec;

double GradCheckReport::worst() const { return std::max({dense, layernorm, lstm, actor, critic}); }

namespace {

Vec random_vec(RngStream& r, std::size_t n, double scale = 1.0) {
  Vec v(n);
  for (auto& x : v) x = r.uniform(-scale, scale);
  return v;
}

void randomize(const nn::ParameterList& params, RngStream& r, double scale) {
  for (auto* p : params) {
    for (std::size_t i = 0; i < p->value.size(); ++i) p->value[i] = r.uniform(-scale, scale);
  }
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double check_dense(RngStream& r) {
  nn::Dense d("d", 7, 5);
  nn::ParameterList ps;
  d.collect(ps);
  randomize(ps, r, 1.0);
  Vec x = random_vec(r, 7);
  const Vec w = random_vec(r, 5);
  auto loss = [&] { return dot(d.forward(x), w); };
  Vec dx;
  const auto pr = check_parameter_grads(ps, loss, [&] { dx = d.backward(x, w); });
  return std::max(pr.max_rel_error, check_input_grad(x, loss, dx));
}

double check_layernorm(RngStream& r) {
  nn::LayerNorm n("n", 6);
  nn::ParameterList ps;
  n.collect(ps);
  randomize(ps, r, 1.5);
  Vec x = random_vec(r, 6, 2.0);
  const Vec w = random_vec(r, 6);
  auto loss = [&] { return dot(n.forward(x), w); };
  Vec dx;
  const auto pr = check_parameter_grads(ps, loss, [&] {
    nn::LayerNorm::Cache c;
    n.forward(x, &c);
    dx = n.backward(c, w);
  });
  return std::max(pr.max_rel_error, check_input_grad(x, loss, dx));
}

double check_lstm(RngStream& r) {
  const std::size_t in = 3, hid = 4, steps = 5;
  nn::Lstm l("l", in, hid);
  nn::ParameterList ps;
  l.collect(ps);
  randomize(ps, r, 0.8);
  Vec x = random_vec(r, in * steps);
  Vec h0 = random_vec(r, hid, 0.5);
  Vec c0 = random_vec(r, hid, 0.5);
  std::vector<Vec> w_seq;
  for (std::size_t t = 0; t < steps; ++t) w_seq.push_back(random_vec(r, hid));
  const Vec wh = random_vec(r, hid);
  const Vec wc = random_vec(r, hid);
  auto loss = [&] {
    const auto out = l.forward(x, steps, h0, c0);
    double s = dot(out.h_last, wh) + dot(out.c_last, wc);
    for (std::size_t t = 0; t < steps; ++t) s += dot(out.h_seq[t], w_seq[t]);
    return s;
  };
  nn::Lstm::InputGrads g;
  const auto pr = check_parameter_grads(ps, loss, [&] {
    nn::Lstm::Trace tr;
    l.forward(x, steps, h0, c0, &tr);
    g = l.backward(tr, w_seq, wh, wc);
  });
  double worst = pr.max_rel_error;
  worst = std::max(worst, check_input_grad(x, loss, g.dx_seq));
  worst = std::max(worst, check_input_grad(h0, loss, g.dh0));
  worst = std::max(worst, check_input_grad(c0, loss, g.dc0));
  // Loss on the final state only (empty per-step gradient).
  auto last_only = [&] {
    const auto out = l.forward(x, steps, h0, c0);
    return dot(out.h_last, wh);
  };
  const auto pr2 = check_parameter_grads(ps, last_only, [&] {
    nn::Lstm::Trace tr;
    l.forward(x, steps, h0, c0, &tr);
    l.backward(tr, {}, wh, Vec(hid, 0.0));
  });
  return std::max(worst, pr2.max_rel_error);
}

td3::NetworkDims dims_for(bool full) { return full ? td3::NetworkDims{20, 40, 2} : td3::NetworkDims{4, 3, 2}; }

td3::Observation random_obs(RngStream& r, const td3::NetworkDims& d) {
  return {random_vec(r, d.internal), random_vec(r, d.seq_len * d.step_features)};
}

double check_actor(RngStream& r, bool full) {
  const auto dims = dims_for(full);
  td3::ActorNet a("a", dims, full ? 6 : 3, full ? 32 : 5, full ? 3 : 2);
  const auto ps = a.parameters();
  randomize(ps, r, 0.5);
  auto obs = random_obs(r, dims);
  const td3::ActionGrad w{r.uniform(-1, 1), r.uniform(-1, 1)};
  auto loss = [&] {
    const auto act = a.forward(obs, nullptr);
    return w[0] * act.trade + w[1] * act.sentiment;
  };
  td3::ActorNet::InputGrads g;
  const auto pr = check_parameter_grads(ps, loss, [&] {
    td3::ActorNet::Trace tr;
    a.forward(obs, &tr);
    g = a.backward(tr, w);
  });
  double worst = pr.max_rel_error;
  worst = std::max(worst, check_input_grad(obs.internal, loss, g.internal));
  worst = std::max(worst, check_input_grad(obs.environment, loss, g.environment));
  return worst;
}

double check_critic(RngStream& r, bool full) {
  const auto dims = dims_for(full);
  td3::CriticNet c("c", dims, full ? 32 : 5, full ? 3 : 2);
  const auto ps = c.parameters();
  randomize(ps, r, 0.5);
  const auto obs = random_obs(r, dims);
  Vec act{r.uniform(-2, 2), r.uniform(-1, 1)};
  const double w = r.uniform(0.5, 1.5);
  auto loss = [&] { return w * c.value(obs, {act[0], act[1]}); };
  const auto pr = check_parameter_grads(ps, loss, [&] {
    nn::Mlp::Trace tr;
    c.forward(obs, {act[0], act[1]}, &tr);
    c.backward(tr, w);
  });
  td3::ActionGrad ga;
  c.value_and_action_grad(obs, {act[0], act[1]}, ga);
  const Vec da{w * ga[0], w * ga[1]};
  return std::max(pr.max_rel_error, check_input_grad(act, loss, da));
}

}  // namespace

GradCheckReport run_gradchecks(std::uint64_t seed, bool full_size) {
  RngStream r(seed);
  GradCheckReport rep;
  rep.dense = check_dense(r);
  rep.layernorm = check_layernorm(r);
  rep.lstm = check_lstm(r);
  rep.actor = check_actor(r, full_size);
  rep.critic = check_critic(r, full_size);
  return rep;
}

}  // namespace feedsim::testing
