#include "feedsim/td3/networks.hpp"

#include <cmath>
#include <stdexcept>

namespace feedsim::td3 {

namespace {

void check_observation(const NetworkDims& dims, const Observation& obs) {
  if (obs.internal.size() != dims.internal || obs.environment.size() != dims.seq_len * dims.step_features) {
    throw std::invalid_argument("observation does not match network dimensions");
  }
}

}  // namespace

ActorNet::ActorNet(const std::string& name, const NetworkDims& dims, std::size_t embed, std::size_t width,
                   std::size_t blocks)
    : dims_(dims),
      lstm_(name + ".lstm", dims.step_features, embed),
      mlp_(name + ".mlp", embed + dims.internal, width, blocks, 2) {}

void ActorNet::init_uniform(RngStream& rng) {
  lstm_.init_uniform(rng);
  mlp_.init_uniform(rng);
}

void ActorNet::zero_parameters() {
  for (auto* p : parameters()) p->value.fill(0.0);
}

Action ActorNet::forward(const Observation& obs, Trace* trace) const {
  check_observation(dims_, obs);
  const std::size_t h = lstm_.hidden_size();
  const nn::Vec zeros(h, 0.0);
  auto out = lstm_.forward(obs.environment, dims_.seq_len, zeros, zeros, trace ? &trace->lstm : nullptr);
  nn::Vec joined = out.h_last;
  joined.insert(joined.end(), obs.internal.begin(), obs.internal.end());
  auto z = mlp_.forward(joined, trace ? &trace->mlp : nullptr);
  const double t0 = std::tanh(z[0]);
  const double t1 = std::tanh(z[1]);
  if (trace) trace->head_tanh = {t0, t1};
  return {kTradeBound * t0, kSentimentBound * t1};
}

ActorNet::InputGrads ActorNet::backward(const Trace& trace, const ActionGrad& d_action, bool accumulate) {
  const double t0 = trace.head_tanh[0];
  const double t1 = trace.head_tanh[1];
  nn::Vec dz{d_action[0] * kTradeBound * (1.0 - t0 * t0), d_action[1] * kSentimentBound * (1.0 - t1 * t1)};
  nn::Vec dj = mlp_.backward(trace.mlp, dz, accumulate);
  const std::size_t h = lstm_.hidden_size();
  nn::Vec dh_last(dj.begin(), dj.begin() + static_cast<std::ptrdiff_t>(h));
  const nn::Vec dc_last(h, 0.0);
  auto lg = lstm_.backward(trace.lstm, {}, dh_last, dc_last, accumulate);
  InputGrads g;
  g.internal.assign(dj.begin() + static_cast<std::ptrdiff_t>(h), dj.end());
  g.environment = std::move(lg.dx_seq);
  return g;
}

nn::ParameterList ActorNet::parameters() {
  nn::ParameterList out;
  lstm_.collect(out);
  mlp_.collect(out);
  return out;
}

CriticNet::CriticNet(const std::string& name, const NetworkDims& dims, std::size_t width, std::size_t blocks)
    : dims_(dims), mlp_(name + ".mlp", dims.flat_size() + 2, width, blocks, 1) {}

void CriticNet::init_uniform(RngStream& rng) { mlp_.init_uniform(rng); }

nn::Vec CriticNet::input(const Observation& obs, const Action& a) const {
  check_observation(dims_, obs);
  nn::Vec x;
  x.reserve(dims_.flat_size() + 2);
  x.insert(x.end(), obs.environment.begin(), obs.environment.end());
  x.insert(x.end(), obs.internal.begin(), obs.internal.end());
  x.push_back(a.trade);
  x.push_back(a.sentiment);
  return x;
}

double CriticNet::forward(const Observation& obs, const Action& a, nn::Mlp::Trace* trace) const {
  return mlp_.forward(input(obs, a), trace)[0];
}

double CriticNet::value(const Observation& obs, const Action& a) const { return forward(obs, a, nullptr); }

double CriticNet::value_and_action_grad(const Observation& obs, const Action& a, ActionGrad& grad) const {
  nn::Mlp::Trace trace;
  const double q = forward(obs, a, &trace);
  const nn::Vec dq{1.0};
  nn::Vec dx = mlp_.backward(trace, dq, false);
  grad = {dx[dx.size() - 2], dx[dx.size() - 1]};
  return q;
}

void CriticNet::backward(const nn::Mlp::Trace& trace, double dq) {
  const nn::Vec d{dq};
  mlp_.backward(trace, d, true);
}

nn::ParameterList CriticNet::parameters() {
  nn::ParameterList out;
  mlp_.collect(out);
  return out;
}

}  // namespace feedsim::td3
