#pragma once

#include <cstddef>
#include <deque>
#include <memory>
#include <vector>

#include "feedsim/core/rng.hpp"
#include "feedsim/socialfeed/post.hpp"

namespace feedsim::social {

/// Time-sorted posts for one symbol and day. Posts with equal times keep
/// insertion order.
class FeedStore {
 public:
  void add(Post post);
  /// Posts with t1 < post_time <= t2, in time order.
  std::vector<const Post*> query(SimTime t1, SimTime t2) const;

  std::size_t size() const noexcept { return posts_.size(); }
  bool empty() const noexcept { return posts_.empty(); }
  const std::vector<Post>& posts() const noexcept { return posts_; }

 private:
  std::vector<Post> posts_;
};

struct SamplingConfig {
  double p_seen = 0.5;
  std::size_t cap = 30;

  void validate() const;
};

/// One run's view of the feed: a shared read-only base plus the posts
/// injected during the run. Injection is only allowed in direct mode.
class FeedSession {
 public:
  FeedSession(std::shared_ptr<const FeedStore> base, bool injection_enabled);

  /// Throws ModeError when injection is disabled.
  void inject_post(Post post);
  std::vector<const Post*> query(SimTime t1, SimTime t2) const;

  /// Candidates in (t_prev, t_now], each kept with probability p_seen, then
  /// uniformly subsampled down to the cap. Result stays in time order.
  std::vector<const Post*> sample_since(SimTime t_prev, SimTime t_now, RngStream& rng,
                                        const SamplingConfig& cfg) const;

  bool injection_enabled() const noexcept { return injection_enabled_; }
  std::size_t injected_count() const noexcept { return injected_.size(); }
  const std::deque<Post>& injected() const noexcept { return injected_; }

 private:
  std::shared_ptr<const FeedStore> base_;
  bool injection_enabled_;
  std::deque<Post> injected_;  // time-sorted, stable addresses
};

}  // namespace feedsim::social
