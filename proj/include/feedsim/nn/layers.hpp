#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "feedsim/core/rng.hpp"
#include "feedsim/nn/tensor.hpp"

namespace feedsim::nn {

// Layers work on one sample at a time. forward() is const; backward()
// takes whatever forward() cached, accumulates parameter gradients unless
// `accumulate` is false, and returns the gradient with respect to the input.

class Dense {
 public:
  Dense(std::string name, std::size_t in, std::size_t out);

  std::size_t in() const noexcept { return in_; }
  std::size_t out() const noexcept { return out_; }

  /// W and b ~ U(-1/sqrt(in), 1/sqrt(in)).
  void init_uniform(RngStream& rng);
  Vec forward(std::span<const double> x) const;
  Vec backward(std::span<const double> x, std::span<const double> dy, bool accumulate = true);
  void collect(ParameterList& out) { out.push_back(&weight); out.push_back(&bias); }

  Parameter weight;  // [out x in]
  Parameter bias;    // [out]

 private:
  std::size_t in_;
  std::size_t out_;
};

class LayerNorm {
 public:
  struct Cache {
    Vec xhat;
    double inv_std = 0.0;
  };

  LayerNorm(std::string name, std::size_t n, double epsilon = 1e-5);

  std::size_t size() const noexcept { return n_; }
  double epsilon() const noexcept { return epsilon_; }

  /// gain * (x - mean) / sqrt(var + eps) + bias, population variance.
  Vec forward(std::span<const double> x, Cache* cache = nullptr) const;
  Vec backward(const Cache& cache, std::span<const double> dy, bool accumulate = true);
  void collect(ParameterList& out) { out.push_back(&gain); out.push_back(&bias); }

  Parameter gain;
  Parameter bias;

 private:
  std::size_t n_;
  double epsilon_;
};

Vec tanh_forward(std::span<const double> x);
/// `y` is the forward output.
Vec tanh_backward(std::span<const double> y, std::span<const double> dy);

/// Single-layer LSTM. Gate rows are stacked [input, forget, cell, output],
/// each `hidden` rows tall, in w_input, w_hidden, and bias.
class Lstm {
 public:
  struct Step {
    Vec x, h_prev, c_prev;
    Vec i, f, g, o;
    Vec c, tanh_c, h;
  };
  struct Trace {
    std::vector<Step> steps;
  };
  struct Output {
    std::vector<Vec> h_seq;
    Vec h_last;
    Vec c_last;
  };
  struct InputGrads {
    Vec dx_seq;  // [T x input] row-major
    Vec dh0;
    Vec dc0;
  };

  Lstm(std::string name, std::size_t input, std::size_t hidden);

  std::size_t input_size() const noexcept { return input_; }
  std::size_t hidden_size() const noexcept { return hidden_; }

  /// Weights and biases ~ U(-1/sqrt(hidden), 1/sqrt(hidden)).
  void init_uniform(RngStream& rng);

  /// `x_seq` holds `steps` rows of `input` values.
  Output forward(std::span<const double> x_seq, std::size_t steps, std::span<const double> h0,
                 std::span<const double> c0, Trace* trace = nullptr) const;

  /// Backpropagation through time. `dh_seq` may be empty (loss only on the
  /// final state) or hold one gradient per step.
  InputGrads backward(const Trace& trace, const std::vector<Vec>& dh_seq, std::span<const double> dh_last,
                      std::span<const double> dc_last, bool accumulate = true);

  void collect(ParameterList& out) {
    out.push_back(&w_input);
    out.push_back(&w_hidden);
    out.push_back(&bias);
  }

  Parameter w_input;   // [4H x input]
  Parameter w_hidden;  // [4H x H]
  Parameter bias;      // [4H]

 private:
  std::size_t input_;
  std::size_t hidden_;
};

/// mean((pred - target)^2); writes d loss / d pred when `grad` is non-null.
double mse(std::span<const double> pred, std::span<const double> target, Vec* grad = nullptr);

}  // namespace feedsim::nn
