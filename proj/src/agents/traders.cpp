#include "feedsim/agents/traders.hpp"

#include <iostream>
#include <stdexcept>

#include "feedsim/core/error.hpp"
#include "feedsim/socialfeed/prompts.hpp"

namespace feedsim::agents {

std::int64_t Cadence::draw(RngStream& rng) const {
  const double f = 1.0 + rng.uniform(-jitter, jitter);
  return static_cast<std::int64_t>(static_cast<double>(interval_ns) * f);
}

void Cadence::validate() const {
  if (interval_ns <= 0) throw std::invalid_argument("cadence interval must be positive");
  if (!(jitter >= 0.0 && jitter < 1.0)) throw std::invalid_argument("cadence jitter must lie in [0, 1)");
}

TraderBase::TraderBase(std::string name, AgentId exchange, SimTime window_start, SimTime window_end, Cadence cadence,
                       sim::LatencyModel latency)
    : sim::Agent(std::move(name)),
      exchange_(exchange),
      cadence_(cadence),
      latency_(latency),
      window_start_(window_start),
      window_end_(window_end) {
  cadence_.validate();
  if (window_end_ <= window_start_) throw std::invalid_argument("trading window is empty");
}

void TraderBase::schedule_first(sim::Kernel& kernel, SimTime at) {
  kernel.set_latency(id(), latency_);
  cadence_rng_ = &kernel.stream(name() + "/cadence");
  kernel.schedule(std::max(at, kernel.now()), id(), sim::Wakeup{}, id());
}

void TraderBase::on_event(sim::Kernel& kernel, const sim::Event& event) {
  if (std::holds_alternative<sim::Wakeup>(event.payload)) {
    if (!in_window(kernel.now())) return;
    ++wakeups_;
    const SimTime next = kernel.now() + cadence_.draw(*cadence_rng_);
    if (next < window_end_) kernel.schedule(next, id(), sim::Wakeup{}, id());
    on_wakeup(kernel);
  } else if (const auto* fill = std::get_if<sim::FillReport>(&event.payload)) {
    ++fills_;
    portfolio_.apply_fill(*fill);
  } else if (const auto* c = std::get_if<sim::CancelReport>(&event.payload)) {
    portfolio_.apply_cancel(c->order_id, c->cancelled);
  } else if (const auto* r = std::get_if<sim::OrderRejected>(&event.payload)) {
    portfolio_.remove_open(r->order_id);
  } else if (const auto* md = std::get_if<sim::MarketDataPtr>(&event.payload)) {
    on_market_data(kernel, **md);
  }
}

void TraderBase::cancel_all(sim::Kernel& kernel) {
  for (const auto& [oid, o] : portfolio_.open_orders()) kernel.send(id(), exchange_, sim::CancelRequest{oid, id()});
}

void TraderBase::submit(sim::Kernel& kernel, const OrderIntent& intent) {
  if (intent.quantity <= 0) return;
  const OrderId oid = (static_cast<OrderId>(id()) + 1) << 40 | ++order_counter_;
  portfolio_.add_open(oid, intent.side, intent.quantity);
  kernel.send(id(), exchange_, sim::OrderSubmission{oid, id(), intent});
  ++orders_sent_;
}

RlAgent::RlAgent(std::string name, AgentId exchange, SimTime window_start, SimTime window_end, RlAgentConfig cfg,
                 td3::Td3Learner& learner, std::string symbol, social::FeedSession* feed,
                 social::TextGenBackend* generator, td3::MetricsCsv* metrics)
    : TraderBase(std::move(name), exchange, window_start, window_end, cfg.cadence, cfg.latency),
      cfg_(cfg),
      learner_(learner),
      symbol_(std::move(symbol)),
      feed_(feed),
      generator_(generator),
      metrics_(metrics) {
  if (cfg_.post && (!feed_ || !generator_)) throw std::invalid_argument("posting needs a feed and a generator");
}

void RlAgent::on_start(sim::Kernel& kernel) {
  post_rng_ = &kernel.stream(name() + "/posts");
  learner_.set_frozen(!cfg_.training);
  schedule_first(kernel, window_start());
}

void RlAgent::on_wakeup(sim::Kernel& kernel) {
  cancel_all(kernel);
  awaiting_data_ = true;
  kernel.send(id(), exchange_, sim::MarketDataRequest{cfg_.levels, cfg_.depth});
}

Price RlAgent::value_now(const sim::MarketDataResponse& md) {
  if (md.current_mid) last_mid_ = md.current_mid;
  return mark_to_market(portfolio(), md.current_mid, last_mid_);
}

void RlAgent::reward_previous(const td3::Observation& obs, Price value, bool done) {
  if (!prev_obs_) return;
  const double r = compute_reward(prev_value_, value, cfg_.value_offset);
  stats_.rewards.push_back(r);
  if (!cfg_.training) return;
  learner_.observe(td3::Transition{*prev_obs_, prev_action_, r, obs, done});
  const auto m = learner_.train_step();
  if (m.trained) {
    stats_.updates += cfg_.training ? learner_.config().updates_per_step : 0;
    if (metrics_) metrics_->append(m, r);
  }
}

void RlAgent::on_market_data(sim::Kernel& kernel, const sim::MarketDataResponse& md) {
  if (!awaiting_data_ || !in_window(kernel.now())) return;
  awaiting_data_ = false;
  const Price value = value_now(md);
  auto obs = build_observation(md, portfolio(), cfg_.scale);
  reward_previous(obs, value, false);

  const td3::Action a = learner_.act(obs, cfg_.training);
  submit(kernel, decode_action(a, portfolio(), cfg_.aggressiveness));
  ++stats_.actions;
  if (cfg_.post) make_post(kernel, md, a);

  prev_obs_ = std::move(obs);
  prev_action_ = a;
  prev_value_ = value;
}

void RlAgent::make_post(sim::Kernel& kernel, const sim::MarketDataResponse& md, const td3::Action& a) {
  social::GenerationRequest req;
  req.author = social::AuthorKind::rl_agent;
  req.symbol = symbol_;
  req.orders = md.tape;
  req.phrase = quantize_sentiment(a.sentiment);
  req.prompt = social::build_rl_prompt(req.orders, *req.phrase);
  req.seed = post_rng_->next_u64();
  try {
    std::string text = generator_->generate(req);
    feed_->inject_post(social::Post{name() + "-" + std::to_string(stats_.posts), symbol_, kernel.now(),
                                    social::AuthorKind::rl_agent, std::move(text)});
    ++stats_.posts;
  } catch (const BackendError& e) {
    ++stats_.post_failures;
    std::cerr << name() << ": post skipped: " << e.what() << '\n';
  }
}

Price RlAgent::finish(const sim::MarketDataResponse& md) {
  const Price value = value_now(md);
  if (prev_obs_) {
    reward_previous(build_observation(md, portfolio(), cfg_.scale), value, true);
    prev_obs_.reset();
  }
  return value;
}

SentimentAgent::SentimentAgent(std::string name, AgentId exchange, SimTime window_start, SimTime window_end,
                               SentimentAgentConfig cfg, const social::FeedSession& feed,
                               social::SentimentBackend& classifier)
    : TraderBase(std::move(name), exchange, window_start, window_end, cfg.cadence, cfg.latency),
      cfg_(cfg),
      feed_(feed),
      classifier_(classifier),
      last_action_(window_start) {
  cfg_.sampling.validate();
  if (cfg_.lot <= 0) throw std::invalid_argument("sentiment lot must be positive");
}

void SentimentAgent::on_start(sim::Kernel& kernel) {
  sample_rng_ = &kernel.stream(name() + "/feed");
  // The first decision needs a minute of feed behind it.
  RngStream& first = kernel.stream(name() + "/first");
  schedule_first(kernel, window_start() + cfg_.cadence.draw(first));
}

void SentimentAgent::on_wakeup(sim::Kernel& kernel) {
  cancel_all(kernel);
  const SimTime now = kernel.now();
  const auto seen = feed_.sample_since(last_action_, now, *sample_rng_, cfg_.sampling);
  last_action_ = now;
  std::vector<ScoredPost> scored;
  scored.reserve(seen.size());
  for (const social::Post* p : seen) {
    if (p->author == social::AuthorKind::rl_agent) ++stats_.rl_posts_seen;
    try {
      const auto c = classifier_.classify(p->text);
      scored.push_back(ScoredPost{p, c.label, c.confidence});
    } catch (const BackendError&) {
      ++stats_.classify_failures;
    }
  }
  stats_.posts_seen += seen.size();
  ++stats_.decisions;
  const auto tally = aggregate_sentiment(scored);
  const auto intent = sentiment_trade(tally.winner, portfolio(), cfg_.lot, cfg_.aggressiveness);
  if (intent.quantity > 0) ++(intent.side == Side::buy ? stats_.buys : stats_.sells);
  submit(kernel, intent);
}

}  // namespace feedsim::agents
