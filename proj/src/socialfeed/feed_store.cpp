#include "feedsim/socialfeed/feed_store.hpp"

#include <algorithm>
#include <stdexcept>

#include "feedsim/core/error.hpp"

namespace feedsim::social {

namespace {

template <class Seq>
auto upper_by_time(Seq& seq, SimTime t) {
  return std::upper_bound(seq.begin(), seq.end(), t,
                          [](SimTime v, const Post& p) { return v < p.post_time; });
}

}  // namespace

void FeedStore::add(Post post) {
  auto it = upper_by_time(posts_, post.post_time);
  posts_.insert(it, std::move(post));
}

std::vector<const Post*> FeedStore::query(SimTime t1, SimTime t2) const {
  std::vector<const Post*> out;
  if (t2 <= t1) return out;
  for (auto it = upper_by_time(posts_, t1); it != posts_.end() && it->post_time <= t2; ++it) out.push_back(&*it);
  return out;
}

void SamplingConfig::validate() const {
  if (!(p_seen >= 0.0 && p_seen <= 1.0)) throw std::invalid_argument("p_seen must lie in [0, 1]");
  if (cap == 0) throw std::invalid_argument("sample cap must be positive");
}

FeedSession::FeedSession(std::shared_ptr<const FeedStore> base, bool injection_enabled)
    : base_(base ? std::move(base) : std::make_shared<const FeedStore>()), injection_enabled_(injection_enabled) {}

void FeedSession::inject_post(Post post) {
  if (!injection_enabled_) throw ModeError("post injection is disabled for this run");
  auto it = upper_by_time(injected_, post.post_time);
  injected_.insert(it, std::move(post));
}

std::vector<const Post*> FeedSession::query(SimTime t1, SimTime t2) const {
  auto base = base_->query(t1, t2);
  if (injected_.empty() || t2 <= t1) return base;
  std::vector<const Post*> extra;
  for (auto it = upper_by_time(injected_, t1); it != injected_.end() && it->post_time <= t2; ++it) {
    extra.push_back(&*it);
  }
  std::vector<const Post*> out;
  out.reserve(base.size() + extra.size());
  // Stable merge: base posts precede injected posts at equal times.
  std::merge(base.begin(), base.end(), extra.begin(), extra.end(), std::back_inserter(out),
             [](const Post* a, const Post* b) { return a->post_time < b->post_time; });
  return out;
}

std::vector<const Post*> FeedSession::sample_since(SimTime t_prev, SimTime t_now, RngStream& rng,
                                                   const SamplingConfig& cfg) const {
  std::vector<const Post*> kept;
  for (const Post* p : query(t_prev, t_now)) {
    if (rng.bernoulli(cfg.p_seen)) kept.push_back(p);
  }
  if (kept.size() <= cfg.cap) return kept;
  std::vector<const Post*> out;
  out.reserve(cfg.cap);
  for (std::size_t i : rng.sample_indices(kept.size(), cfg.cap)) out.push_back(kept[i]);
  return out;
}

}  // namespace feedsim::social
