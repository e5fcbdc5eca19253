#include "feedsim/nn/mlp.hpp"

#include <stdexcept>

namespace feedsim::nn {

Mlp::Mlp(const std::string& name, std::size_t in, std::size_t width, std::size_t blocks, std::size_t out)
    : head_(name + ".head", blocks == 0 ? in : width, out) {
  if (blocks == 0) throw std::invalid_argument("mlp needs at least one hidden block");
  layers_.reserve(blocks);
  norms_.reserve(blocks);
  for (std::size_t k = 0; k < blocks; ++k) {
    const std::string tag = name + ".fc" + std::to_string(k);
    layers_.emplace_back(tag, k == 0 ? in : width, width);
    norms_.emplace_back(tag + ".norm", width);
  }
}

void Mlp::init_uniform(RngStream& rng) {
  for (auto& l : layers_) l.init_uniform(rng);
  head_.init_uniform(rng);
}

Vec Mlp::forward(std::span<const double> x, Trace* trace) const {
  if (trace) {
    trace->inputs.clear();
    trace->norms.assign(layers_.size(), {});
    trace->activations.clear();
  }
  Vec h(x.begin(), x.end());
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    if (trace) trace->inputs.push_back(h);
    Vec u = layers_[k].forward(h);
    Vec v = norms_[k].forward(u, trace ? &trace->norms[k] : nullptr);
    h = tanh_forward(v);
    if (trace) trace->activations.push_back(h);
  }
  if (trace) trace->inputs.push_back(h);
  return head_.forward(h);
}

Vec Mlp::backward(const Trace& trace, std::span<const double> dy, bool accumulate) {
  Vec g = head_.backward(trace.inputs.back(), dy, accumulate);
  for (std::size_t k = layers_.size(); k-- > 0;) {
    g = tanh_backward(trace.activations[k], g);
    g = norms_[k].backward(trace.norms[k], g, accumulate);
    g = layers_[k].backward(trace.inputs[k], g, accumulate);
  }
  return g;
}

void Mlp::collect(ParameterList& out) {
  for (std::size_t k = 0; k < layers_.size(); ++k) {
    layers_[k].collect(out);
    norms_[k].collect(out);
  }
  head_.collect(out);
}

}  // namespace feedsim::nn
