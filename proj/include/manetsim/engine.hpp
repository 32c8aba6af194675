#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "manetsim/errors.hpp"

namespace manetsim {

using SimTime = double;  // seconds since run start
using NodeId = uint32_t;

inline constexpr NodeId kBroadcastId = 0xFFFFFFFFu;

// Closed set of event descriptors. Events carry no callbacks so a run's
// event log is serializable and two runs can be compared byte for byte.
enum class EventKind : uint8_t {
  MacAttempt,         // carrier-sense then draw backoff
  MacTxStart,         // backoff elapsed, transmit if still idle
  MacTxEnd,           // arg = channel transmission id
  FrameGen,           // arg = frame index
  AodvRrepTimeout,    // arg = destination node
  DsdvPeriodicUpdate,
  DsdvTriggeredUpdate,
};

const char* event_kind_name(EventKind kind);

struct Event {
  SimTime fire_at = 0.0;
  uint64_t seq = 0;  // tiebreaker, unique per run
  NodeId target = 0;
  EventKind kind = EventKind::MacAttempt;
  uint64_t arg = 0;
};

using EventHandle = uint64_t;

// Deterministic discrete-event core: one clock, one ordered queue.
// Single-threaded per run; distinct runs own distinct engines.
class Engine {
 public:
  using Dispatcher = std::function<void(const Event&)>;

  void set_dispatcher(Dispatcher d) { dispatch_ = std::move(d); }

  SimTime now() const { return now_; }

  // Enqueues an event; the handle can cancel it until it fires.
  EventHandle schedule(SimTime fire_at, NodeId target, EventKind kind, uint64_t arg = 0);

  // True if the event was still pending and is now removed.
  bool cancel(EventHandle handle);

  // Executes every event with fire_at <= t_end in (fire_at, seq) order,
  // then advances the clock to t_end. Returns the number executed.
  uint64_t run_until(SimTime t_end);

  bool empty() const { return queue_.empty(); }
  size_t pending() const { return queue_.size(); }

  void enable_event_log() { log_enabled_ = true; }
  const std::vector<std::string>& event_log() const { return log_; }

 private:
  using Key = std::pair<SimTime, uint64_t>;

  SimTime now_ = 0.0;
  uint64_t next_seq_ = 0;
  std::map<Key, Event> queue_;
  std::unordered_map<uint64_t, SimTime> pending_;  // seq -> fire_at
  Dispatcher dispatch_;
  bool log_enabled_ = false;
  std::vector<std::string> log_;
};

}  // namespace manetsim
