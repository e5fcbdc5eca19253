#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "feedsim/core/rng.hpp"
#include "feedsim/core/types.hpp"
#include "feedsim/simkernel/messages.hpp"

namespace feedsim::sim {

struct Event {
  SimTime deliver_at{};
  std::uint64_t seq = 0;
  AgentId recipient = kNoAgent;
  AgentId sender = kNoAgent;
  Payload payload;
};

/// Message delivery delay: base + U[-jitter, +jitter] + computation, floored at 0.
struct LatencyModel {
  std::int64_t base_ns = 1'000;
  std::int64_t jitter_ns = 500;
  std::int64_t computation_ns = 10'000;

  void validate() const;
};

std::int64_t sample_latency(const LatencyModel& model, RngStream& rng);

struct RunStats {
  std::uint64_t events_processed = 0;
  SimTime final_clock{};
  friend bool operator==(const RunStats&, const RunStats&) = default;
};

struct TraceRecord {
  SimTime deliver_at{};
  std::uint64_t seq = 0;
  AgentId recipient = kNoAgent;
  std::size_t kind = 0;  // payload alternative index
  std::uint64_t digest = 0;
  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

class Kernel;

class Agent {
 public:
  explicit Agent(std::string name) : name_(std::move(name)) {}
  virtual ~Agent() = default;
  Agent(const Agent&) = delete;
  Agent& operator=(const Agent&) = delete;

  AgentId id() const noexcept { return id_; }
  const std::string& name() const noexcept { return name_; }

  /// Called once by Kernel::start, before any event is delivered.
  virtual void on_start(Kernel&) {}
  virtual void on_event(Kernel& kernel, const Event& event) = 0;

 private:
  friend class Kernel;
  std::string name_;
  AgentId id_ = kNoAgent;
};

/// Single-threaded deterministic discrete-event kernel. Events pop in
/// (deliver_at, seq) order; seq is assigned at insertion.
class Kernel {
 public:
  explicit Kernel(std::uint64_t seed, SimTime start = {});

  /// Registers an agent owned by the kernel; it gets its own latency model
  /// and a latency stream derived from its name.
  template <class A, class... Args>
  A& emplace_agent(Args&&... args) {
    auto agent = std::make_unique<A>(std::forward<Args>(args)...);
    A& ref = *agent;
    register_agent(std::move(agent));
    return ref;
  }

  void set_latency(AgentId agent, const LatencyModel& model);
  const LatencyModel& latency(AgentId agent) const;

  /// Throws CausalityError if `deliver_at` is before the current clock.
  std::uint64_t schedule(SimTime deliver_at, AgentId recipient, Payload payload, AgentId sender = kNoAgent);

  /// Delivers after a latency sampled from the sender's model and stream.
  std::uint64_t send(AgentId sender, AgentId recipient, Payload payload);

  /// Calls on_start for every agent (once).
  void start();
  RunStats run_until(SimTime end);

  SimTime now() const noexcept { return clock_; }
  std::size_t pending() const noexcept { return queue_.size(); }
  std::size_t agent_count() const noexcept { return agents_.size(); }
  Agent& agent(AgentId id);

  /// Named stream owned by the kernel, derived from the run seed.
  RngStream& stream(std::string_view name);
  const SeedTree& seeds() const noexcept { return seeds_; }

  void record_trace(bool on) { recording_ = on; }
  const std::vector<TraceRecord>& trace() const noexcept { return trace_; }
  /// Rolling hash over every processed event.
  std::uint64_t trace_hash() const noexcept { return trace_hash_; }

 private:
  void register_agent(std::unique_ptr<Agent> agent);

  SeedTree seeds_;
  SimTime clock_;
  std::uint64_t next_seq_ = 0;
  std::vector<Event> queue_;  // binary min-heap on (deliver_at, seq)
  std::vector<std::unique_ptr<Agent>> agents_;
  std::vector<LatencyModel> latency_;
  std::vector<RngStream> latency_rng_;
  std::map<std::string, RngStream, std::less<>> streams_;
  bool started_ = false;
  bool recording_ = false;
  std::vector<TraceRecord> trace_;
  std::uint64_t trace_hash_ = 0xcbf29ce484222325ULL;
};

}  // namespace feedsim::sim
