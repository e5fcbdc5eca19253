#include "feedsim/td3/types.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace feedsim::td3 {

void Td3Config::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("td3 config: " + what); };
  if (seq_len == 0) fail("seq_len must be positive");
  if (depth == 0) fail("depth must be positive");
  if (embed == 0) fail("embed must be positive");
  if (width < 2) fail("width must be at least 2");
  if (blocks == 0) fail("blocks must be positive");
  if (!(lr > 0.0)) fail("lr must be positive");
  if (explore_sigma < 0.0) fail("explore_sigma must be non-negative");
  if (policy_sigma < 0.0) fail("policy_sigma must be non-negative");
  if (policy_noise_clip < 0.0) fail("policy_noise_clip must be non-negative");
  if (batch == 0) fail("batch must be positive");
  if (policy_freq == 0) fail("policy_freq must be positive");
  if (!(tau > 0.0 && tau <= 1.0)) fail("tau must lie in (0, 1]");
  if (!(gamma >= 0.0 && gamma <= 1.0)) fail("gamma must lie in [0, 1]");
  if (buffer_capacity < batch) fail("buffer_capacity must be at least batch");
  if (updates_per_step == 0) fail("updates_per_step must be positive");
}

Action clamp_action(Action a) noexcept {
  a.trade = std::clamp(a.trade, -kTradeBound, kTradeBound);
  a.sentiment = std::clamp(a.sentiment, -kSentimentBound, kSentimentBound);
  return a;
}

bool in_range(const Action& a) noexcept {
  return a.trade >= -kTradeBound && a.trade <= kTradeBound && a.sentiment >= -kSentimentBound &&
         a.sentiment <= kSentimentBound;
}

}  // namespace feedsim::td3
