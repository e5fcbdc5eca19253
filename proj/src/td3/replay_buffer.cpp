#include "feedsim/td3/replay_buffer.hpp"

#include <stdexcept>

namespace feedsim::td3 {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("replay buffer capacity must be positive");
}

void ReplayBuffer::push(Transition t) {
  if (items_.size() < capacity_) {
    items_.push_back(std::move(t));
  } else {
    items_[next_] = std::move(t);
  }
  next_ = (next_ + 1) % capacity_;
}

std::vector<const Transition*> ReplayBuffer::sample(std::size_t n, RngStream& rng) const {
  if (n > items_.size()) throw std::invalid_argument("replay buffer holds fewer transitions than requested");
  std::vector<const Transition*> out;
  out.reserve(n);
  for (std::size_t i : rng.sample_indices(items_.size(), n)) out.push_back(&items_[i]);
  return out;
}

void ReplayBuffer::clear() {
  items_.clear();
  next_ = 0;
}

}  // namespace feedsim::td3
