#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "feedsim/nn/layers.hpp"

namespace feedsim::nn {

/// `blocks` x (dense -> layer norm -> tanh) followed by a linear head.
class Mlp {
 public:
  struct Trace {
    std::vector<Vec> inputs;  // inputs[k] feeds block k; inputs.back() feeds the head
    std::vector<LayerNorm::Cache> norms;
    std::vector<Vec> activations;
  };

  Mlp(const std::string& name, std::size_t in, std::size_t width, std::size_t blocks, std::size_t out);

  std::size_t in() const noexcept { return layers_.front().in(); }
  std::size_t out() const noexcept { return head_.out(); }

  void init_uniform(RngStream& rng);
  Vec forward(std::span<const double> x, Trace* trace = nullptr) const;
  Vec backward(const Trace& trace, std::span<const double> dy, bool accumulate = true);
  void collect(ParameterList& out);

  Dense& head() noexcept { return head_; }

 private:
  std::vector<Dense> layers_;
  std::vector<LayerNorm> norms_;
  Dense head_;
};

}  // namespace feedsim::nn
