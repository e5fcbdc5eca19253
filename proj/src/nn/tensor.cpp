#include "feedsim/nn/tensor.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

#include "feedsim/core/error.hpp"

namespace feedsim::nn {

Tensor::Tensor(std::vector<std::size_t> shape, double fill)
    : shape_(std::move(shape)),
      values_(std::accumulate(shape_.begin(), shape_.end(), std::size_t{1}, std::multiplies<>{}), fill) {}

void Tensor::fill(double v) { std::fill(values_.begin(), values_.end(), v); }

std::string Tensor::shape_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < shape_.size(); ++i) os << (i ? "x" : "") << shape_[i];
  os << ']';
  return os.str();
}

void check_finite(std::span<const double> values, std::string_view what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw NumericFault("non-finite value in " + std::string(what));
  }
}

void zero_grad(const ParameterList& params) {
  for (auto* p : params) p->grad.fill(0.0);
}

std::size_t parameter_count(const ParameterList& params) {
  std::size_t n = 0;
  for (const auto* p : params) n += p->value.size();
  return n;
}

}  // namespace feedsim::nn
