#include "feedsim/exchange/exchange.hpp"

#include <algorithm>
#include <stdexcept>

namespace feedsim::exchange {

using orderbook::LobsterEvent;

OrderStreamTape::OrderStreamTape(std::size_t capacity) : ring_(capacity) {
  if (capacity == 0) throw std::invalid_argument("tape capacity must be positive");
}

void OrderStreamTape::push(const OrderRecord& record) {
  ring_[head_] = record;
  head_ = (head_ + 1) % ring_.size();
  size_ = std::min(size_ + 1, ring_.size());
}

std::vector<OrderRecord> OrderStreamTape::contents() const {
  std::vector<OrderRecord> out;
  out.reserve(size_);
  const std::size_t start = (head_ + ring_.size() - size_) % ring_.size();
  for (std::size_t i = 0; i < size_; ++i) out.push_back(ring_[(start + i) % ring_.size()]);
  return out;
}

ExchangeAgent::ExchangeAgent(ExchangeConfig config,
                             std::shared_ptr<const std::vector<orderbook::LobsterMessage>> flow)
    : sim::Agent("exchange"),
      config_(std::move(config)),
      flow_(std::move(flow)),
      tape_(config_.tape_capacity) {
  if (config_.snapshot_interval_ns <= 0) throw std::invalid_argument("snapshot interval must be positive");
  if (config_.snapshot_depth == 0) throw std::invalid_argument("snapshot depth must be positive");
}

void ExchangeAgent::on_start(sim::Kernel& kernel) {
  kernel.set_latency(id(), config_.latency);
  if (flow_ && !flow_->empty()) {
    kernel.schedule(std::max(kernel.now(), flow_->front().time), id(), sim::ReplayTick{0}, id());
  }
  if (config_.market_open >= kernel.now()) kernel.schedule(config_.market_open, id(), sim::SnapshotTick{}, id());
}

void ExchangeAgent::on_event(sim::Kernel& kernel, const sim::Event& event) {
  if (const auto* tick = std::get_if<sim::ReplayTick>(&event.payload)) {
    replay_step((*flow_)[tick->index], &kernel);
    const std::size_t next = tick->index + 1;
    if (next < flow_->size()) kernel.schedule((*flow_)[next].time, id(), sim::ReplayTick{next}, id());
  } else if (std::holds_alternative<sim::SnapshotTick>(event.payload)) {
    take_snapshot(kernel.now());
    const SimTime next = kernel.now() + config_.snapshot_interval_ns;
    if (next <= config_.market_close) kernel.schedule(next, id(), sim::SnapshotTick{}, id());
  } else if (const auto* sub = std::get_if<sim::OrderSubmission>(&event.payload)) {
    handle_agent_order(kernel, sub->owner, sub->order_id, sub->intent);
  } else if (const auto* cancel = std::get_if<sim::CancelRequest>(&event.payload)) {
    const Quantity removed = book_.cancel(cancel->order_id);
    if (removed > 0) {
      kernel.send(id(), cancel->owner, sim::CancelReport{cancel->order_id, removed});
    }
    if (!book_.contains(cancel->order_id)) agent_order_side_.erase(cancel->order_id);
    note_mid();
  } else if (const auto* req = std::get_if<sim::MarketDataRequest>(&event.payload)) {
    auto md = std::make_shared<sim::MarketDataResponse>(
        market_data(static_cast<std::size_t>(req->levels), static_cast<std::size_t>(req->depth), kernel.now()));
    kernel.send(id(), event.sender, sim::MarketDataPtr(std::move(md)));
  }
}

void ExchangeAgent::note_mid() {
  if (auto m = book_.mid()) last_mid_ = m;
}

void ExchangeAgent::report_fills(sim::Kernel* kernel, const std::vector<orderbook::Fill>& fills, AgentId taker_owner,
                                 OrderId taker_id, Side taker_side) {
  for (const auto& f : fills) {
    const Price fee = f.quantity * config_.fee_per_share;
    if (kernel && taker_owner != kNoAgent) {
      kernel->send(id(), taker_owner, sim::FillReport{taker_id, taker_side, f.price, f.quantity, fee, f.timestamp});
    }
    if (!f.maker_origin.is_historical()) {
      if (kernel) {
        kernel->send(id(), f.maker_origin.agent,
                     sim::FillReport{f.maker_order_id, opposite(taker_side), f.price, f.quantity, fee, f.timestamp});
      }
      if (!book_.contains(f.maker_order_id)) agent_order_side_.erase(f.maker_order_id);
    }
  }
}

void ExchangeAgent::replay_step(const orderbook::LobsterMessage& msg, sim::Kernel* kernel) {
  switch (msg.event) {
    case LobsterEvent::submit: {
      if (msg.size <= 0 || msg.price <= 0) {
        ++counters_.unknown_reference;
        break;
      }
      if (book_.contains(msg.order_id)) {
        ++counters_.duplicate_submit;
        break;
      }
      orderbook::Order order{msg.order_id, config_.symbol, msg.direction, msg.price, msg.size, msg.time,
                             orderbook::Origin::historical()};
      const auto fills = book_.submit_limit(order);
      report_fills(kernel, fills, kNoAgent, msg.order_id, msg.direction);
      tape_.push(OrderRecord{msg.direction, msg.price, msg.size, msg.time});
      ++counters_.applied;
      break;
    }
    case LobsterEvent::partial_cancel:
      if (book_.cancel(msg.order_id, msg.size) > 0) {
        ++counters_.applied;
      } else {
        ++counters_.unknown_reference;
      }
      break;
    case LobsterEvent::remove:
      if (book_.cancel(msg.order_id) > 0) {
        ++counters_.applied;
      } else {
        ++counters_.unknown_reference;
      }
      break;
    case LobsterEvent::execute_visible:
    case LobsterEvent::cross:
      if (book_.execute_resting(msg.order_id, msg.size) > 0) {
        ++counters_.applied;
      } else {
        ++counters_.unknown_reference;
      }
      break;
    case LobsterEvent::execute_hidden:
      ++counters_.hidden_executions;
      break;
    case LobsterEvent::halt:
      ++counters_.halts;
      break;
  }
  note_mid();
}

void ExchangeAgent::handle_agent_order(sim::Kernel& kernel, AgentId owner, OrderId order_id,
                                       const OrderIntent& intent) {
  if (intent.quantity <= 0) return;
  ++agent_orders_received_;
  std::optional<Price> reference = intent.side == Side::buy ? book_.best_ask() : book_.best_bid();
  Price limit = 0;
  if (reference) {
    limit = intent.side == Side::buy ? *reference + intent.aggressiveness : *reference - intent.aggressiveness;
  } else if (auto own = intent.side == Side::buy ? book_.best_bid() : book_.best_ask()) {
    limit = *own;  // nothing to cross: join our own side
  } else if (last_mid_) {
    limit = *last_mid_;
  }
  limit = limit > 0 ? std::max(limit, kTick) : 0;
  if (limit <= 0 || book_.contains(order_id)) {
    kernel.send(id(), owner, sim::OrderRejected{order_id});
    return;
  }
  orderbook::Order order{order_id, config_.symbol, intent.side, limit, intent.quantity, kernel.now(),
                         orderbook::Origin::from_agent(owner)};
  const auto fills = book_.submit_limit(order);
  if (book_.contains(order_id)) agent_order_side_[order_id] = intent.side;
  report_fills(&kernel, fills, owner, order_id, intent.side);
  tape_.push(OrderRecord{intent.side, limit, intent.quantity, kernel.now()});
  note_mid();
}

void ExchangeAgent::take_snapshot(SimTime at) {
  auto snap = book_.snapshot(config_.snapshot_depth);
  snap.taken_at = at;
  snapshots_.push_back(std::move(snap));
}

sim::MarketDataResponse ExchangeAgent::market_data(std::size_t levels, std::size_t depth, SimTime as_of) const {
  if (levels == 0) throw std::invalid_argument("market data needs at least one snapshot");
  if (depth == 0 || depth > config_.snapshot_depth) {
    throw std::invalid_argument("requested depth exceeds sampled snapshot depth");
  }
  sim::MarketDataResponse out;
  out.as_of = as_of;
  out.current_mid = book_.mid();
  const std::size_t real = std::min(levels, snapshots_.size());
  out.padded = levels - real;
  out.snapshots.reserve(levels);
  for (std::size_t i = 0; i < out.padded; ++i) out.snapshots.push_back(orderbook::BookSnapshot::empty(depth));
  for (std::size_t i = snapshots_.size() - real; i < snapshots_.size(); ++i) {
    const auto& s = snapshots_[i];
    orderbook::BookSnapshot cut;
    cut.bids.assign(s.bids.begin(), s.bids.begin() + static_cast<std::ptrdiff_t>(depth));
    cut.asks.assign(s.asks.begin(), s.asks.begin() + static_cast<std::ptrdiff_t>(depth));
    cut.mid = s.mid;
    cut.taken_at = s.taken_at;
    out.snapshots.push_back(std::move(cut));
  }
  out.tape = tape_.contents();
  return out;
}

}  // namespace feedsim::exchange
