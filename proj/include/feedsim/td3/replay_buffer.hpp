#pragma once

#include <cstddef>
#include <vector>

#include "feedsim/core/rng.hpp"
#include "feedsim/td3/types.hpp"

namespace feedsim::td3 {

/// Circular transition store; the oldest entry is overwritten when full.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);
  /// `n` distinct entries drawn uniformly; n must not exceed size().
  std::vector<const Transition*> sample(std::size_t n, RngStream& rng) const;
  void clear();

  std::size_t size() const noexcept { return items_.size(); }
  std::size_t capacity() const noexcept { return capacity_; }
  const Transition& operator[](std::size_t i) const { return items_.at(i); }

 private:
  std::size_t capacity_;
  std::size_t next_ = 0;
  std::vector<Transition> items_;
};

}  // namespace feedsim::td3
