#include "manetsim/engine.hpp"

#include <cstdio>

namespace manetsim {

const char* event_kind_name(EventKind kind) {
  switch (kind) {
    case EventKind::MacAttempt: return "mac_attempt";
    case EventKind::MacTxStart: return "mac_tx_start";
    case EventKind::MacTxEnd: return "mac_tx_end";
    case EventKind::FrameGen: return "frame_gen";
    case EventKind::AodvRrepTimeout: return "aodv_rrep_timeout";
    case EventKind::DsdvPeriodicUpdate: return "dsdv_periodic";
    case EventKind::DsdvTriggeredUpdate: return "dsdv_triggered";
  }
  return "unknown";
}

EventHandle Engine::schedule(SimTime fire_at, NodeId target, EventKind kind, uint64_t arg) {
  if (fire_at < now_) {
    throw SchedulingInPast("schedule at t=" + std::to_string(fire_at) +
                           " before now=" + std::to_string(now_));
  }
  Event ev{fire_at, next_seq_++, target, kind, arg};
  queue_.emplace(Key{ev.fire_at, ev.seq}, ev);
  pending_.emplace(ev.seq, ev.fire_at);
  return ev.seq;
}

bool Engine::cancel(EventHandle handle) {
  auto it = pending_.find(handle);
  if (it == pending_.end()) return false;
  queue_.erase(Key{it->second, handle});
  pending_.erase(it);
  return true;
}

uint64_t Engine::run_until(SimTime t_end) {
  if (t_end < now_) {
    throw SchedulingInPast("run_until into the past");
  }
  uint64_t executed = 0;
  while (!queue_.empty()) {
    auto it = queue_.begin();
    if (it->first.first > t_end) break;
    Event ev = it->second;
    queue_.erase(it);
    pending_.erase(ev.seq);
    now_ = ev.fire_at;
    if (log_enabled_) {
      char buf[96];
      std::snprintf(buf, sizeof(buf), "%.9f %llu %u %s", ev.fire_at,
                    static_cast<unsigned long long>(ev.seq), ev.target,
                    event_kind_name(ev.kind));
      log_.emplace_back(buf);
    }
    if (dispatch_) dispatch_(ev);
    ++executed;
  }
  now_ = t_end;
  return executed;
}

}  // namespace manetsim
