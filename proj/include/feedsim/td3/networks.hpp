#pragma once

#include <array>
#include <string>

#include "feedsim/nn/layers.hpp"
#include "feedsim/nn/mlp.hpp"
#include "feedsim/td3/types.hpp"

namespace feedsim::td3 {

using ActionGrad = std::array<double, 2>;

class Policy {
 public:
  virtual ~Policy() = default;
  virtual Action act(const Observation& obs) const = 0;
};

class QFunction {
 public:
  virtual ~QFunction() = default;
  virtual double value(const Observation& obs, const Action& a) const = 0;
  /// Q(s, a) and dQ/da; must leave any parameters untouched.
  virtual double value_and_action_grad(const Observation& obs, const Action& a, ActionGrad& grad) const = 0;
};

/// LSTM embedding of the snapshot sequence, concatenated with the internal
/// state, then the MLP trunk. Heads: trade = 2 tanh(z0), sentiment = tanh(z1).
class ActorNet : public Policy {
 public:
  struct Trace {
    nn::Lstm::Trace lstm;
    nn::Mlp::Trace mlp;
    nn::Vec head_tanh;
  };

  ActorNet(const std::string& name, const NetworkDims& dims, std::size_t embed, std::size_t width,
           std::size_t blocks = 3);

  void init_uniform(RngStream& rng);
  void zero_parameters();

  Action act(const Observation& obs) const override { return forward(obs, nullptr); }
  Action forward(const Observation& obs, Trace* trace) const;

  struct InputGrads {
    nn::Vec internal;
    nn::Vec environment;
  };
  /// Accumulates parameter gradients of sum_k d_action[k] * action_k.
  InputGrads backward(const Trace& trace, const ActionGrad& d_action, bool accumulate = true);

  nn::ParameterList parameters();
  const NetworkDims& dims() const noexcept { return dims_; }

 private:
  NetworkDims dims_;
  mutable nn::Lstm lstm_;
  nn::Mlp mlp_;
};

/// Flattened observation concatenated with the action, then the MLP trunk
/// and a linear scalar head.
class CriticNet : public QFunction {
 public:
  CriticNet(const std::string& name, const NetworkDims& dims, std::size_t width, std::size_t blocks = 3);

  void init_uniform(RngStream& rng);

  double value(const Observation& obs, const Action& a) const override;
  double value_and_action_grad(const Observation& obs, const Action& a, ActionGrad& grad) const override;

  double forward(const Observation& obs, const Action& a, nn::Mlp::Trace* trace) const;
  void backward(const nn::Mlp::Trace& trace, double dq);

  nn::ParameterList parameters();
  const NetworkDims& dims() const noexcept { return dims_; }

 private:
  nn::Vec input(const Observation& obs, const Action& a) const;

  NetworkDims dims_;
  mutable nn::Mlp mlp_;
};

}  // namespace feedsim::td3
