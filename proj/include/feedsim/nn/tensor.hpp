#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace feedsim::nn {

using Vec = std::vector<double>;

/// Dense row-major array of doubles.
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::vector<std::size_t> shape, double fill = 0.0);

  const std::vector<std::size_t>& shape() const noexcept { return shape_; }
  std::size_t size() const noexcept { return values_.size(); }
  std::size_t rows() const noexcept { return shape_.empty() ? 0 : shape_.front(); }
  std::size_t cols() const noexcept { return shape_.size() < 2 ? 1 : shape_[1]; }

  double* data() noexcept { return values_.data(); }
  const double* data() const noexcept { return values_.data(); }
  std::span<double> span() noexcept { return values_; }
  std::span<const double> span() const noexcept { return values_; }
  double& operator[](std::size_t i) noexcept { return values_[i]; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  double& at(std::size_t r, std::size_t c) noexcept { return values_[r * cols() + c]; }
  double at(std::size_t r, std::size_t c) const noexcept { return values_[r * cols() + c]; }

  void fill(double v);
  bool same_shape(const Tensor& other) const noexcept { return shape_ == other.shape_; }
  std::string shape_string() const;

 private:
  std::vector<std::size_t> shape_;
  std::vector<double> values_;
};

/// Throws NumericFault naming `what` if any entry is NaN or infinite.
void check_finite(std::span<const double> values, std::string_view what);

struct Parameter {
  Parameter(std::string n, std::vector<std::size_t> shape) : name(std::move(n)), value(shape), grad(shape) {}
  std::string name;
  Tensor value;
  Tensor grad;
};

using ParameterList = std::vector<Parameter*>;

void zero_grad(const ParameterList& params);
std::size_t parameter_count(const ParameterList& params);

}  // namespace feedsim::nn
