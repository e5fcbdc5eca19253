#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace feedsim {

class CausalityError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t row, const std::string& what)
      : std::runtime_error("row " + std::to_string(row) + ": " + what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// NaN/Inf in activations, gradients, or a non-positive valuation.
class NumericFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Failure talking to (or inside) a text-generation or classification backend.
class BackendError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace feedsim
