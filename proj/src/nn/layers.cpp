#include "feedsim/nn/layers.hpp"

#include <cmath>
#include <stdexcept>

#include "feedsim/core/error.hpp"

namespace feedsim::nn {

namespace {

void require_size(std::span<const double> v, std::size_t n, const std::string& who) {
  if (v.size() != n) {
    throw std::invalid_argument(who + ": expected input of size " + std::to_string(n) + ", got " +
                                std::to_string(v.size()));
  }
}

void fill_uniform(Tensor& t, double bound, RngStream& rng) {
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(-bound, bound);
}

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

// ---------------------------------------------------------------- Dense

Dense::Dense(std::string name, std::size_t in, std::size_t out)
    : weight(name + ".weight", {out, in}), bias(name + ".bias", {out}), in_(in), out_(out) {
  if (in == 0 || out == 0) throw std::invalid_argument("dense layer dimensions must be positive");
}

void Dense::init_uniform(RngStream& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(in_));
  fill_uniform(weight.value, bound, rng);
  fill_uniform(bias.value, bound, rng);
}

Vec Dense::forward(std::span<const double> x) const {
  require_size(x, in_, weight.name);
  Vec y(bias.value.span().begin(), bias.value.span().end());
  const double* w = weight.value.data();
  for (std::size_t r = 0; r < out_; ++r) {
    const double* row = w + r * in_;
    double acc = 0.0;
    for (std::size_t c = 0; c < in_; ++c) acc += row[c] * x[c];
    y[r] += acc;
  }
  return y;
}

Vec Dense::backward(std::span<const double> x, std::span<const double> dy, bool accumulate) {
  require_size(x, in_, weight.name);
  require_size(dy, out_, weight.name + " (grad)");
  Vec dx(in_, 0.0);
  const double* w = weight.value.data();
  double* gw = weight.grad.data();
  for (std::size_t r = 0; r < out_; ++r) {
    const double g = dy[r];
    if (g == 0.0) continue;
    const double* row = w + r * in_;
    for (std::size_t c = 0; c < in_; ++c) dx[c] += row[c] * g;
    if (accumulate) {
      double* grow = gw + r * in_;
      for (std::size_t c = 0; c < in_; ++c) grow[c] += g * x[c];
    }
  }
  if (accumulate) {
    for (std::size_t r = 0; r < out_; ++r) bias.grad[r] += dy[r];
  }
  return dx;
}

// ------------------------------------------------------------ LayerNorm

LayerNorm::LayerNorm(std::string name, std::size_t n, double epsilon)
    : gain(name + ".gain", {n}), bias(name + ".bias", {n}), n_(n), epsilon_(epsilon) {
  if (n < 2) throw std::invalid_argument("layer norm needs at least two features");
  if (!(epsilon > 0.0)) throw std::invalid_argument("layer norm epsilon must be positive");
  gain.value.fill(1.0);
}

Vec LayerNorm::forward(std::span<const double> x, Cache* cache) const {
  require_size(x, n_, gain.name);
  const double n = static_cast<double>(n_);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  var /= n;
  const double inv_std = 1.0 / std::sqrt(var + epsilon_);
  Vec y(n_);
  Vec xhat(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    xhat[i] = (x[i] - mean) * inv_std;
    y[i] = gain.value[i] * xhat[i] + bias.value[i];
  }
  if (cache) {
    cache->xhat = std::move(xhat);
    cache->inv_std = inv_std;
  }
  return y;
}

Vec LayerNorm::backward(const Cache& cache, std::span<const double> dy, bool accumulate) {
  require_size(dy, n_, gain.name + " (grad)");
  const double n = static_cast<double>(n_);
  Vec dxhat(n_);
  double sum_dxhat = 0.0;
  double sum_dxhat_xhat = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    dxhat[i] = dy[i] * gain.value[i];
    sum_dxhat += dxhat[i];
    sum_dxhat_xhat += dxhat[i] * cache.xhat[i];
    if (accumulate) {
      gain.grad[i] += dy[i] * cache.xhat[i];
      bias.grad[i] += dy[i];
    }
  }
  Vec dx(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    dx[i] = cache.inv_std / n * (n * dxhat[i] - sum_dxhat - cache.xhat[i] * sum_dxhat_xhat);
  }
  return dx;
}

// ----------------------------------------------------------------- tanh

Vec tanh_forward(std::span<const double> x) {
  Vec y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = std::tanh(x[i]);
  return y;
}

Vec tanh_backward(std::span<const double> y, std::span<const double> dy) {
  Vec dx(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) dx[i] = dy[i] * (1.0 - y[i] * y[i]);
  return dx;
}

// ----------------------------------------------------------------- LSTM

Lstm::Lstm(std::string name, std::size_t input, std::size_t hidden)
    : w_input(name + ".w_input", {4 * hidden, input}),
      w_hidden(name + ".w_hidden", {4 * hidden, hidden}),
      bias(name + ".bias", {4 * hidden}),
      input_(input),
      hidden_(hidden) {
  if (input == 0 || hidden == 0) throw std::invalid_argument("lstm dimensions must be positive");
}

void Lstm::init_uniform(RngStream& rng) {
  const double bound = 1.0 / std::sqrt(static_cast<double>(hidden_));
  fill_uniform(w_input.value, bound, rng);
  fill_uniform(w_hidden.value, bound, rng);
  fill_uniform(bias.value, bound, rng);
}

Lstm::Output Lstm::forward(std::span<const double> x_seq, std::size_t steps, std::span<const double> h0,
                           std::span<const double> c0, Trace* trace) const {
  require_size(x_seq, steps * input_, w_input.name);
  require_size(h0, hidden_, w_input.name + " (h0)");
  require_size(c0, hidden_, w_input.name + " (c0)");
  const std::size_t H = hidden_;
  Output out;
  Vec h(h0.begin(), h0.end());
  Vec c(c0.begin(), c0.end());
  Vec z(4 * H);
  if (trace) trace->steps.clear();
  for (std::size_t t = 0; t < steps; ++t) {
    const double* x = x_seq.data() + t * input_;
    for (std::size_t r = 0; r < 4 * H; ++r) {
      const double* wx = w_input.value.data() + r * input_;
      const double* wh = w_hidden.value.data() + r * H;
      double acc = bias.value[r];
      for (std::size_t k = 0; k < input_; ++k) acc += wx[k] * x[k];
      for (std::size_t k = 0; k < H; ++k) acc += wh[k] * h[k];
      z[r] = acc;
    }
    Step s;
    s.i.resize(H);
    s.f.resize(H);
    s.g.resize(H);
    s.o.resize(H);
    s.c.resize(H);
    s.tanh_c.resize(H);
    s.h.resize(H);
    for (std::size_t k = 0; k < H; ++k) {
      s.i[k] = sigmoid(z[k]);
      s.f[k] = sigmoid(z[H + k]);
      s.g[k] = std::tanh(z[2 * H + k]);
      s.o[k] = sigmoid(z[3 * H + k]);
      s.c[k] = s.f[k] * c[k] + s.i[k] * s.g[k];
      s.tanh_c[k] = std::tanh(s.c[k]);
      s.h[k] = s.o[k] * s.tanh_c[k];
    }
    if (trace) {
      s.x.assign(x, x + input_);
      s.h_prev = h;
      s.c_prev = c;
    }
    h = s.h;
    c = s.c;
    out.h_seq.push_back(h);
    if (trace) trace->steps.push_back(std::move(s));
  }
  out.h_last = h;
  out.c_last = c;
  return out;
}

Lstm::InputGrads Lstm::backward(const Trace& trace, const std::vector<Vec>& dh_seq, std::span<const double> dh_last,
                                std::span<const double> dc_last, bool accumulate) {
  const std::size_t H = hidden_;
  const std::size_t T = trace.steps.size();
  if (!dh_seq.empty() && dh_seq.size() != T) throw std::invalid_argument("lstm backward: dh_seq length mismatch");
  require_size(dh_last, H, w_input.name + " (dh_last)");
  require_size(dc_last, H, w_input.name + " (dc_last)");
  InputGrads g;
  g.dx_seq.assign(T * input_, 0.0);
  Vec dh(dh_last.begin(), dh_last.end());
  Vec dc(dc_last.begin(), dc_last.end());
  Vec dz(4 * H);
  for (std::size_t tt = T; tt-- > 0;) {
    const Step& s = trace.steps[tt];
    if (!dh_seq.empty()) {
      for (std::size_t k = 0; k < H; ++k) dh[k] += dh_seq[tt][k];
    }
    for (std::size_t k = 0; k < H; ++k) {
      const double dct = dc[k] + dh[k] * s.o[k] * (1.0 - s.tanh_c[k] * s.tanh_c[k]);
      const double d_o = dh[k] * s.tanh_c[k];
      const double d_i = dct * s.g[k];
      const double d_g = dct * s.i[k];
      const double d_f = dct * s.c_prev[k];
      dz[k] = d_i * s.i[k] * (1.0 - s.i[k]);
      dz[H + k] = d_f * s.f[k] * (1.0 - s.f[k]);
      dz[2 * H + k] = d_g * (1.0 - s.g[k] * s.g[k]);
      dz[3 * H + k] = d_o * s.o[k] * (1.0 - s.o[k]);
      dc[k] = dct * s.f[k];
    }
    Vec dh_prev(H, 0.0);
    double* dx = g.dx_seq.data() + tt * input_;
    for (std::size_t r = 0; r < 4 * H; ++r) {
      const double gr = dz[r];
      if (gr == 0.0) continue;
      const double* wx = w_input.value.data() + r * input_;
      const double* wh = w_hidden.value.data() + r * H;
      for (std::size_t k = 0; k < input_; ++k) dx[k] += wx[k] * gr;
      for (std::size_t k = 0; k < H; ++k) dh_prev[k] += wh[k] * gr;
      if (accumulate) {
        double* gx = w_input.grad.data() + r * input_;
        double* gh = w_hidden.grad.data() + r * H;
        for (std::size_t k = 0; k < input_; ++k) gx[k] += gr * s.x[k];
        for (std::size_t k = 0; k < H; ++k) gh[k] += gr * s.h_prev[k];
        bias.grad[r] += gr;
      }
    }
    dh = std::move(dh_prev);
  }
  g.dh0 = std::move(dh);
  g.dc0 = std::move(dc);
  return g;
}

double mse(std::span<const double> pred, std::span<const double> target, Vec* grad) {
  if (pred.size() != target.size() || pred.empty()) throw std::invalid_argument("mse: size mismatch");
  const double n = static_cast<double>(pred.size());
  double loss = 0.0;
  if (grad) grad->assign(pred.size(), 0.0);
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    loss += d * d;
    if (grad) (*grad)[i] = 2.0 * d / n;
  }
  return loss / n;
}

}  // namespace feedsim::nn
