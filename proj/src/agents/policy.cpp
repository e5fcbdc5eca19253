#include "feedsim/agents/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "feedsim/core/error.hpp"

namespace feedsim::agents {

Quantity PortfolioState::open_buy_quantity() const noexcept {
  Quantity q = 0;
  for (const auto& [id, o] : open_) q += o.side == Side::buy ? o.remaining : 0;
  return q;
}

Quantity PortfolioState::open_sell_quantity() const noexcept {
  Quantity q = 0;
  for (const auto& [id, o] : open_) q += o.side == Side::sell ? o.remaining : 0;
  return q;
}

void PortfolioState::add_open(OrderId id, Side side, Quantity qty) {
  if (qty <= 0) throw std::invalid_argument("open order quantity must be positive");
  open_[id] = OpenOrder{side, qty};
}

void PortfolioState::apply_fill(const sim::FillReport& fill) {
  const Quantity next = holdings_ + (fill.side == Side::buy ? fill.quantity : -fill.quantity);
  if (next > limit_ || next < -limit_) {
    throw std::logic_error("fill takes holdings to " + std::to_string(next) + ", beyond the limit");
  }
  holdings_ = next;
  const Price notional = fill.price * fill.quantity;
  cash_ += fill.side == Side::buy ? -notional : notional;
  cash_ -= fill.fee;
  if (auto it = open_.find(fill.order_id); it != open_.end()) {
    it->second.remaining -= fill.quantity;
    if (it->second.remaining <= 0) open_.erase(it);
  }
}

void PortfolioState::apply_cancel(OrderId id, Quantity cancelled) {
  if (auto it = open_.find(id); it != open_.end()) {
    it->second.remaining -= cancelled;
    if (it->second.remaining <= 0) open_.erase(it);
  }
}

void PortfolioState::set_position(Price cash, Quantity holdings) {
  if (holdings > limit_ || holdings < -limit_) throw std::invalid_argument("holdings beyond the limit");
  cash_ = cash;
  holdings_ = holdings;
}

Price mark_to_market(const PortfolioState& p, std::optional<Price> mid, std::optional<Price> fallback_mid) {
  if (p.holdings() == 0) return p.cash();
  const auto m = mid ? mid : fallback_mid;
  if (!m) throw NumericFault("cannot value a position without any mid price");
  return p.cash() + p.holdings() * *m;
}

double compute_reward(Price prev_value, Price new_value, Price offset) {
  const double prev = static_cast<double>(prev_value) + static_cast<double>(offset);
  const double next = static_cast<double>(new_value) + static_cast<double>(offset);
  if (!(prev > 0.0) || !(next > 0.0)) throw NumericFault("offset-adjusted portfolio value is not positive");
  return 100.0 * (next / prev - 1.0);
}

Quantity allowed_quantity(const PortfolioState& p, Side side) noexcept {
  const Quantity room = side == Side::buy ? p.limit() - (p.holdings() + p.open_buy_quantity())
                                          : p.limit() + (p.holdings() - p.open_sell_quantity());
  return std::max<Quantity>(0, room);
}

OrderIntent decode_action(const td3::Action& a, const PortfolioState& p, Price aggressiveness) {
  const auto raw = static_cast<Quantity>(std::llround(1000.0 * a.trade));
  OrderIntent intent;
  intent.aggressiveness = aggressiveness;
  if (raw == 0) return intent;
  intent.side = raw > 0 ? Side::buy : Side::sell;
  intent.quantity = std::min(raw > 0 ? raw : -raw, allowed_quantity(p, intent.side));
  return intent;
}

social::SentimentPhrase quantize_sentiment(double a1) noexcept {
  using social::Intensity;
  using social::SentimentLabel;
  const double x = std::clamp(a1, -1.0, 1.0);
  const double m = std::abs(x) * 7.0;  // bin edges at odd multiples of 1/7
  if (m < 1.0) return {};
  const Intensity level = m < 3.0 ? Intensity::somewhat : m < 5.0 ? Intensity::very : Intensity::extremely;
  return {x > 0 ? SentimentLabel::positive : SentimentLabel::negative, level};
}

SentimentTally aggregate_sentiment(std::span<const ScoredPost> posts) {
  SentimentTally t;
  for (const auto& p : posts) t.score[static_cast<std::size_t>(p.label)] += p.confidence;
  const double best = *std::max_element(t.score.begin(), t.score.end());
  int at_best = 0;
  std::size_t arg = 1;
  for (std::size_t k = 0; k < 3; ++k) {
    if (t.score[k] == best) {
      ++at_best;
      arg = k;
    }
  }
  t.winner = at_best == 1 ? static_cast<social::SentimentLabel>(arg) : social::SentimentLabel::neutral;
  return t;
}

OrderIntent sentiment_trade(social::SentimentLabel label, const PortfolioState& p, Quantity lot,
                            Price aggressiveness) {
  OrderIntent intent;
  intent.aggressiveness = aggressiveness;
  if (label == social::SentimentLabel::neutral) return intent;
  intent.side = label == social::SentimentLabel::positive ? Side::buy : Side::sell;
  intent.quantity = std::min(lot, allowed_quantity(p, intent.side));
  return intent;
}

td3::Observation build_observation(const sim::MarketDataResponse& md, const PortfolioState& p,
                                   const ObservationScale& scale) {
  td3::Observation obs;
  const double limit = static_cast<double>(p.limit());
  obs.internal = {static_cast<double>(p.holdings()) / limit, static_cast<double>(p.net_open_quantity()) / limit};

  std::optional<Price> ref;
  for (auto it = md.snapshots.rbegin(); it != md.snapshots.rend() && !ref; ++it) ref = it->mid;

  const std::size_t depth = md.snapshots.empty() ? 0 : md.snapshots.front().depth();
  obs.environment.reserve(md.snapshots.size() * depth * 4);
  auto price_f = [&](Price px) {
    const double v = static_cast<double>(px - *ref) / static_cast<double>(scale.price_scale);
    return std::clamp(v, -scale.price_clip, scale.price_clip);
  };
  auto qty_f = [&](Quantity q) { return std::clamp(std::log1p(static_cast<double>(q)) / scale.log_qty_norm, 0.0, 1.0); };
  for (std::size_t s = 0; s < md.snapshots.size(); ++s) {
    const auto& snap = md.snapshots[s];
    const bool padded = s < md.padded;
    for (std::size_t d = 0; d < depth; ++d) {
      for (const auto* lv : {&snap.bids[d], &snap.asks[d]}) {
        if (padded || lv->quantity <= 0 || !ref) {
          obs.environment.push_back(0.0);
          obs.environment.push_back(0.0);
        } else {
          obs.environment.push_back(price_f(lv->price));
          obs.environment.push_back(qty_f(lv->quantity));
        }
      }
    }
  }
  return obs;
}

}  // namespace feedsim::agents
