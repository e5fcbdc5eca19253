#pragma once

#include <cstdint>
#include <vector>

#include "feedsim/nn/tensor.hpp"

namespace feedsim::nn {

struct AdamConfig {
  double lr = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Bias-corrected Adam over a fixed parameter list. Reads each
/// parameter's accumulated grad; does not clear it.
class Adam {
 public:
  explicit Adam(ParameterList params, AdamConfig config = {});

  /// Throws NumericFault if any gradient is non-finite.
  void step();
  std::int64_t steps() const noexcept { return t_; }
  const AdamConfig& config() const noexcept { return config_; }
  const ParameterList& parameters() const noexcept { return params_; }

 private:
  ParameterList params_;
  AdamConfig config_;
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
  std::int64_t t_ = 0;
};

}  // namespace feedsim::nn
