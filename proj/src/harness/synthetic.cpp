#include "feedsim/harness/synthetic.hpp"

#include <cmath>
#include <queue>
#include <stdexcept>

#include "feedsim/core/rng.hpp"
#include "feedsim/orderbook/order_book.hpp"

namespace feedsim::harness {

using orderbook::LobsterEvent;
using orderbook::LobsterMessage;

void SyntheticConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("synthetic flow: " + what); };
  if (end <= start) fail("end must follow start");
  if (!(initial_price > 0.05)) fail("initial_price must exceed five ticks");
  if (volatility_per_hour < 0.0) fail("volatility must be non-negative");
  if (switch_rate_per_hour < 0.0) fail("switch rate must be non-negative");
  if (!(arrival_rate > 0.0)) fail("arrival_rate must be positive");
  if (!(marketable_share >= 0.0 && marketable_share <= 1.0)) fail("marketable_share must lie in [0, 1]");
  if (!(marketable_bias >= 0.0 && marketable_bias <= 0.5)) fail("marketable_bias must lie in [0, 0.5]");
  if (!(passive_bias >= 0.0 && passive_bias <= 0.5)) fail("passive_bias must lie in [0, 0.5]");
  if (marketable_reach_ticks < 0) fail("marketable_reach_ticks must be non-negative");
  if (!(level_decay > 0.0 && level_decay <= 1.0)) fail("level_decay must lie in (0, 1]");
  if (!(cancel_lifetime_s > 0.0)) fail("cancel_lifetime_s must be positive");
  if (!(partial_cancel_share >= 0.0 && partial_cancel_share <= 1.0)) fail("partial_cancel_share must lie in [0, 1]");
  if (max_lots < 1) fail("max_lots must be at least 1");
  if (initial_levels < 1) fail("initial_levels must be at least 1");
}

SyntheticConfig regime_preset(std::string_view name) {
  SyntheticConfig c;
  c.regime = std::string(name);
  if (name == "bull") {
    c.drift_per_hour = 0.01;
  } else if (name == "bear") {
    c.drift_per_hour = -0.01;
  } else if (name == "strong_bull") {
    c.drift_per_hour = 0.02;
    c.marketable_bias = 0.2;
  } else if (name == "strong_bear") {
    c.drift_per_hour = -0.02;
    c.marketable_bias = 0.2;
  } else if (name == "choppy_bull") {
    c.drift_per_hour = 0.012;
    c.volatility_per_hour = 0.006;
  } else if (name == "switching") {
    c.drift_per_hour = 0.015;
    c.switch_rate_per_hour = 0.5;
  } else if (name == "momentum") {
    // Thin book, and the passive flow leans with the trend, so the feed
    // built from it carries the trend too.
    c.drift_per_hour = 0.02;
    c.marketable_bias = 0.2;
    c.passive_bias = 0.1;
    c.arrival_rate = 0.5;
    c.max_lots = 2;
  } else if (name == "quiet") {
    c.drift_per_hour = 0.0;
    c.arrival_rate = 0.25;
    c.max_lots = 3;
  } else if (name == "flat") {
    c.drift_per_hour = 0.0;
  } else {
    throw std::invalid_argument("unknown synthetic regime: " + std::string(name));
  }
  return c;
}

std::vector<std::string> regime_names() {
  return {"bull", "bear", "strong_bull", "strong_bear", "choppy_bull", "switching", "momentum", "quiet", "flat"};
}

namespace {

struct PendingCancel {
  SimTime at;
  OrderId id;
  bool operator>(const PendingCancel& o) const { return at != o.at ? at > o.at : id > o.id; }
};

class Generator {
 public:
  explicit Generator(const SyntheticConfig& cfg)
      : cfg_(cfg), rng_(SeedTree(cfg.seed).seed("flow")), fundamental_(cfg.initial_price * kUnitsPerDollar) {
    drift_sign_ = cfg.drift_per_hour >= 0.0 ? 1.0 : -1.0;
  }

  std::vector<LobsterMessage> run() {
    seed_book();
    SimTime t = cfg_.start;
    for (;;) {
      const auto gap = static_cast<std::int64_t>(rng_.exponential(cfg_.arrival_rate) * 1e9) + 1;
      const SimTime next = t + gap;
      flush_cancels(std::min(next, cfg_.end));
      if (next >= cfg_.end) break;
      evolve(static_cast<double>(gap) / (3600.0 * 1e9));
      t = next;
      place(t);
    }
    return std::move(out_);
  }

 private:
  Price anchor_tick() const { return static_cast<Price>(std::floor(fundamental_ / kTick)); }

  Quantity draw_qty() { return 100 * rng_.uniform_int(1, cfg_.max_lots); }

  void seed_book() {
    const Price a = anchor_tick();
    for (std::int64_t k = 0; k < cfg_.initial_levels; ++k) {
      submit(cfg_.start, Side::buy, (a - k) * kTick, draw_qty());
      submit(cfg_.start, Side::sell, (a + 1 + k) * kTick, draw_qty());
    }
  }

  void evolve(double dt_hours) {
    if (cfg_.switch_rate_per_hour > 0.0 && rng_.bernoulli(1.0 - std::exp(-cfg_.switch_rate_per_hour * dt_hours))) {
      drift_sign_ = -drift_sign_;
    }
    const double mu = std::abs(cfg_.drift_per_hour) * drift_sign_;
    const double s = cfg_.volatility_per_hour;
    fundamental_ *= std::exp((mu - 0.5 * s * s) * dt_hours + s * std::sqrt(dt_hours) * rng_.normal());
    fundamental_ = std::max(fundamental_, 5.0 * kTick);
  }

  void place(SimTime t) {
    if (rng_.bernoulli(cfg_.marketable_share)) {
      const double lean = cfg_.drift_per_hour == 0.0 ? 0.0 : cfg_.marketable_bias * drift_sign_;
      const Side side = rng_.bernoulli(0.5 + lean) ? Side::buy : Side::sell;
      const auto opp = side == Side::buy ? book_.best_ask() : book_.best_bid();
      if (opp) {
        const Price reach = cfg_.marketable_reach_ticks * kTick;
        const Price px = side == Side::buy ? *opp + reach : std::max(kTick, *opp - reach);
        submit(t, side, px, draw_qty());
        return;
      }
    }
    const double lean = cfg_.drift_per_hour == 0.0 ? 0.0 : cfg_.passive_bias * drift_sign_;
    const Side side = rng_.bernoulli(0.5 + lean) ? Side::buy : Side::sell;
    const std::int64_t k = rng_.geometric(cfg_.level_decay);
    const Price a = anchor_tick();
    const Price px = side == Side::buy ? (a - k) * kTick : (a + 1 + k) * kTick;
    submit(t, side, std::max(kTick, px), draw_qty());
  }

  void submit(SimTime t, Side side, Price px, Quantity qty) {
    const OrderId id = next_id_++;
    const auto fills = book_.submit_limit({id, "SYN", side, px, qty, t, orderbook::Origin::historical()});
    Quantity filled = 0;
    for (const auto& f : fills) {
      out_.push_back({t, LobsterEvent::execute_visible, f.maker_order_id, f.quantity, f.price, opposite(side)});
      filled += f.quantity;
    }
    if (filled < qty) {
      out_.push_back({t, LobsterEvent::submit, id, qty - filled, px, side});
      const auto life = static_cast<std::int64_t>(rng_.exponential(1.0 / cfg_.cancel_lifetime_s) * 1e9) + 1;
      cancels_.push({t + life, id});
    }
  }

  void flush_cancels(SimTime until) {
    while (!cancels_.empty() && cancels_.top().at < until) {
      const auto c = cancels_.top();
      cancels_.pop();
      const auto order = book_.find(c.id);
      if (!order) continue;
      if (order->quantity > 100 && rng_.bernoulli(cfg_.partial_cancel_share)) {
        const Quantity cut = 100;
        book_.cancel(c.id, cut);
        out_.push_back({c.at, LobsterEvent::partial_cancel, c.id, cut, order->price, order->side});
        const auto life = static_cast<std::int64_t>(rng_.exponential(1.0 / cfg_.cancel_lifetime_s) * 1e9) + 1;
        cancels_.push({c.at + life, c.id});
      } else {
        book_.cancel(c.id);
        out_.push_back({c.at, LobsterEvent::remove, c.id, order->quantity, order->price, order->side});
      }
    }
  }

  const SyntheticConfig& cfg_;
  RngStream rng_;
  double fundamental_;  // price-units
  double drift_sign_ = 1.0;
  orderbook::LimitOrderBook book_;
  OrderId next_id_ = 1;
  std::priority_queue<PendingCancel, std::vector<PendingCancel>, std::greater<>> cancels_;
  std::vector<LobsterMessage> out_;
};

}  // namespace

std::vector<LobsterMessage> generate_flow(const SyntheticConfig& cfg) {
  cfg.validate();
  return Generator(cfg).run();
}

}  // namespace feedsim::harness
