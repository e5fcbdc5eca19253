#include "feedsim/simkernel/kernel.hpp"

#include <algorithm>
#include <stdexcept>

#include "feedsim/core/error.hpp"

namespace feedsim::sim {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) noexcept { return splitmix64(h ^ v); }

std::uint64_t digest_snapshot(std::uint64_t h, const orderbook::BookSnapshot& s) noexcept {
  for (const auto& l : s.bids) h = mix(mix(h, static_cast<std::uint64_t>(l.price)), static_cast<std::uint64_t>(l.quantity));
  for (const auto& l : s.asks) h = mix(mix(h, static_cast<std::uint64_t>(l.price)), static_cast<std::uint64_t>(l.quantity));
  return h;
}

struct Later {
  bool operator()(const Event& a, const Event& b) const noexcept {
    if (a.deliver_at != b.deliver_at) return a.deliver_at > b.deliver_at;
    return a.seq > b.seq;
  }
};

}  // namespace

std::uint64_t digest(const Payload& payload) noexcept {
  struct Visitor {
    std::uint64_t operator()(const Wakeup& w) const { return mix(1, static_cast<std::uint64_t>(w.tag)); }
    std::uint64_t operator()(const OrderSubmission& o) const {
      std::uint64_t h = mix(2, static_cast<std::uint64_t>(o.order_id));
      h = mix(h, static_cast<std::uint64_t>(o.intent.side));
      h = mix(h, static_cast<std::uint64_t>(o.intent.quantity));
      return mix(h, static_cast<std::uint64_t>(o.intent.aggressiveness));
    }
    std::uint64_t operator()(const CancelRequest& c) const { return mix(3, static_cast<std::uint64_t>(c.order_id)); }
    std::uint64_t operator()(const FillReport& f) const {
      std::uint64_t h = mix(4, static_cast<std::uint64_t>(f.order_id));
      h = mix(h, static_cast<std::uint64_t>(f.price));
      return mix(h, static_cast<std::uint64_t>(f.quantity));
    }
    std::uint64_t operator()(const CancelReport& c) const {
      return mix(mix(5, static_cast<std::uint64_t>(c.order_id)), static_cast<std::uint64_t>(c.cancelled));
    }
    std::uint64_t operator()(const OrderRejected& r) const { return mix(6, static_cast<std::uint64_t>(r.order_id)); }
    std::uint64_t operator()(const MarketDataRequest& r) const {
      return mix(mix(7, static_cast<std::uint64_t>(r.levels)), static_cast<std::uint64_t>(r.depth));
    }
    std::uint64_t operator()(const MarketDataPtr& md) const {
      std::uint64_t h = mix(8, md ? static_cast<std::uint64_t>(md->as_of.ns) : 0);
      if (!md) return h;
      for (const auto& s : md->snapshots) h = digest_snapshot(h, s);
      for (const auto& o : md->tape) h = mix(mix(h, static_cast<std::uint64_t>(o.price)), static_cast<std::uint64_t>(o.quantity));
      return h;
    }
    std::uint64_t operator()(const ReplayTick& r) const { return mix(9, r.index); }
    std::uint64_t operator()(const SnapshotTick&) const { return 10; }
  };
  return std::visit(Visitor{}, payload);
}

void LatencyModel::validate() const {
  if (jitter_ns < 0) throw std::invalid_argument("latency jitter must be non-negative");
}

std::int64_t sample_latency(const LatencyModel& model, RngStream& rng) {
  std::int64_t jitter = 0;
  if (model.jitter_ns > 0) jitter = rng.uniform_int(-model.jitter_ns, model.jitter_ns);
  return std::max<std::int64_t>(0, model.base_ns + jitter + model.computation_ns);
}

Kernel::Kernel(std::uint64_t seed, SimTime start) : seeds_(seed), clock_(start) {}

void Kernel::register_agent(std::unique_ptr<Agent> agent) {
  if (started_) throw std::logic_error("agents must be registered before start()");
  agent->id_ = static_cast<AgentId>(agents_.size());
  latency_.emplace_back();
  latency_rng_.push_back(seeds_.stream("latency/" + agent->name()));
  agents_.push_back(std::move(agent));
}

void Kernel::set_latency(AgentId agent, const LatencyModel& model) {
  model.validate();
  latency_.at(static_cast<std::size_t>(agent)) = model;
}

const LatencyModel& Kernel::latency(AgentId agent) const { return latency_.at(static_cast<std::size_t>(agent)); }

Agent& Kernel::agent(AgentId id) { return *agents_.at(static_cast<std::size_t>(id)); }

std::uint64_t Kernel::schedule(SimTime deliver_at, AgentId recipient, Payload payload, AgentId sender) {
  if (deliver_at < clock_) {
    throw CausalityError("event at " + std::to_string(deliver_at.ns) + "ns scheduled before clock " +
                         std::to_string(clock_.ns) + "ns");
  }
  const std::uint64_t seq = next_seq_++;
  queue_.push_back(Event{deliver_at, seq, recipient, sender, std::move(payload)});
  std::push_heap(queue_.begin(), queue_.end(), Later{});
  return seq;
}

std::uint64_t Kernel::send(AgentId sender, AgentId recipient, Payload payload) {
  const auto idx = static_cast<std::size_t>(sender);
  const std::int64_t delay = sample_latency(latency_.at(idx), latency_rng_.at(idx));
  return schedule(clock_ + delay, recipient, std::move(payload), sender);
}

void Kernel::start() {
  if (started_) return;
  started_ = true;
  for (auto& a : agents_) a->on_start(*this);
}

RunStats Kernel::run_until(SimTime end) {
  start();
  RunStats stats;
  while (!queue_.empty() && queue_.front().deliver_at <= end) {
    std::pop_heap(queue_.begin(), queue_.end(), Later{});
    Event ev = std::move(queue_.back());
    queue_.pop_back();
    clock_ = ev.deliver_at;
    const std::uint64_t d = digest(ev.payload);
    trace_hash_ = mix(mix(mix(mix(trace_hash_, static_cast<std::uint64_t>(ev.deliver_at.ns)), ev.seq),
                          static_cast<std::uint64_t>(ev.recipient)),
                      d);
    if (recording_) trace_.push_back(TraceRecord{ev.deliver_at, ev.seq, ev.recipient, ev.payload.index(), d});
    if (ev.recipient >= 0 && static_cast<std::size_t>(ev.recipient) < agents_.size()) {
      agents_[static_cast<std::size_t>(ev.recipient)]->on_event(*this, ev);
    }
    ++stats.events_processed;
  }
  stats.final_clock = clock_;
  return stats;
}

RngStream& Kernel::stream(std::string_view name) {
  auto it = streams_.find(name);
  if (it == streams_.end()) it = streams_.emplace(std::string(name), seeds_.stream(name)).first;
  return it->second;
}

}  // namespace feedsim::sim
