#include "manetsim/dsdv.hpp"

#include <algorithm>

namespace manetsim {

DsdvRouter::DsdvRouter(NodeId self, Engine& eng, MacLayer& mac, DsdvParams params,
                       RoutingHooks hooks)
    : self_(self), eng_(eng), mac_(mac), prm_(params), hooks_(std::move(hooks)) {
  table_[self_] = DsdvRouteEntry{self_, self_, 0, 0, 0.0, false, 0.0};
}

void DsdvRouter::start() {
  eng_.schedule(eng_.now() + self_ * prm_.startup_stagger_s, self_,
                EventKind::DsdvPeriodicUpdate);
}

std::optional<RouteInfo> DsdvRouter::lookup(NodeId dest) const {
  if (dest == self_) return RouteInfo{self_, 0};
  auto it = table_.find(dest);
  if (it == table_.end()) return std::nullopt;
  const DsdvRouteEntry& e = it->second;
  if (e.metric == kInfMetric || e.seq % 2 != 0) return std::nullopt;
  return RouteInfo{e.next_hop, e.metric};
}

void DsdvRouter::send_data(Packet pkt) {
  handle_data(pkt);
}

void DsdvRouter::handle_data(const Packet& pkt) {
  if (pkt.dst == self_) {
    hooks_.deliver_local(pkt);
    return;
  }
  std::optional<RouteInfo> route = lookup(pkt.dst);
  if (!route) {
    hooks_.drop_data(pkt);  // proactive protocols hold no discovery buffer
    return;
  }
  Packet fwd = pkt;
  fwd.prev_hop = self_;
  fwd.next_hop = route->next_hop;
  mac_.send(std::move(fwd));
}

void DsdvRouter::on_timer(const Event& ev) {
  switch (ev.kind) {
    case EventKind::DsdvPeriodicUpdate:
      broadcast_update();
      eng_.schedule(eng_.now() + prm_.update_period_s, self_,
                    EventKind::DsdvPeriodicUpdate);
      break;
    case EventKind::DsdvTriggeredUpdate:
      trigger_pending_ = false;
      last_trigger_ = eng_.now();
      broadcast_update();
      break;
    default:
      break;
  }
}

void DsdvRouter::broadcast_update() {
  SimTime now = eng_.now();
  DsdvRouteEntry& own = table_[self_];
  own.seq += 2;  // freshly incremented even sequence number

  Packet pkt;
  pkt.uid = hooks_.next_uid();
  pkt.kind = PacketKind::DsdvUpdate;
  pkt.src = self_;
  pkt.dst = kBroadcastId;
  pkt.prev_hop = self_;
  pkt.next_hop = kBroadcastId;
  pkt.ttl = 1;
  pkt.dsdv.push_back(RouteAdvert{self_, 0, own.seq});
  for (const auto& [dest, e] : table_) {
    if (dest == self_) continue;
    if (e.settling && now < e.settle_until) continue;
    pkt.dsdv.push_back(RouteAdvert{dest, e.metric, e.seq});
  }
  pkt.size_bytes = prm_.header_bytes + prm_.entry_bytes * uint32_t(pkt.dsdv.size());
  mac_.send(std::move(pkt));
}

void DsdvRouter::trigger_update() {
  if (trigger_pending_) return;
  SimTime now = eng_.now();
  SimTime at = std::max(now, last_trigger_ + prm_.min_trigger_gap_s);
  trigger_pending_ = true;
  eng_.schedule(at, self_, EventKind::DsdvTriggeredUpdate);
}

void DsdvRouter::adopt(DsdvRouteEntry& e, NodeId from, uint32_t metric, uint32_t seq,
                       bool settle) {
  if (seq < e.seq) {
    throw SimError("dsdv sequence number would decrease");  // invariant guard
  }
  SimTime now = eng_.now();
  e.next_hop = from;
  e.metric = metric;
  e.seq = seq;
  e.installed_at = now;
  e.settling = settle;
  e.settle_until = settle ? now + prm_.settling_s : 0.0;
  if (hooks_.route_log) {
    hooks_.route_log->append(now, self_, "install", e.dest, metric);
  }
}

void DsdvRouter::process_update(const Packet& pkt, NodeId from) {
  for (const RouteAdvert& adv : pkt.dsdv) {
    if (adv.dest == self_) continue;
    uint32_t metric_via = adv.metric == kInfMetric ? kInfMetric : adv.metric + 1;

    auto it = table_.find(adv.dest);
    if (it == table_.end()) {
      if (metric_via == kInfMetric) continue;
      DsdvRouteEntry e{adv.dest, from, kInfMetric, 0, 0.0, false, 0.0};
      auto [ins, ok] = table_.emplace(adv.dest, e);
      (void)ok;
      // Brand-new destinations are adopted and re-advertised at the next
      // wave; they do not trigger, so cold-start convergence proceeds one
      // update period per hop.
      adopt(ins->second, from, metric_via, adv.seq, false);
      continue;
    }

    DsdvRouteEntry& e = it->second;
    if (adv.seq > e.seq) {
      if (metric_via == kInfMetric) {
        bool was_reachable = e.metric != kInfMetric;
        e.seq = adv.seq;
        e.metric = kInfMetric;
        e.settling = false;
        if (hooks_.route_log) hooks_.route_log->append(eng_.now(), self_, "expire", e.dest, 0);
        if (was_reachable) trigger_update();
      } else {
        bool was_broken = e.metric == kInfMetric;
        // Settling damps fluctuation: only a strictly worse metric waits
        // before being re-advertised. A same-metric refresh is a stable
        // route and must keep flowing, or downstream nodes would only ever
        // hear fresher sequence numbers along worse paths.
        bool worse = !was_broken && metric_via > e.metric;
        adopt(e, from, metric_via, adv.seq, worse);
        if (was_broken) trigger_update();
      }
    } else if (adv.seq == e.seq && metric_via < e.metric) {
      adopt(e, from, metric_via, adv.seq, false);
    }
    // Older sequence numbers are ignored entirely.
  }
}

void DsdvRouter::on_receive(const Packet& pkt, NodeId from) {
  switch (pkt.kind) {
    case PacketKind::DsdvUpdate: process_update(pkt, from); break;
    case PacketKind::Data: handle_data(pkt); break;
    default: break;
  }
}

void DsdvRouter::on_link_break(NodeId neighbor) {
  bool changed = false;
  for (auto& [dest, e] : table_) {
    if (dest == self_) continue;
    if (e.next_hop == neighbor && e.metric != kInfMetric) {
      e.metric = kInfMetric;
      e.seq += 1;  // odd: broken
      e.settling = false;
      changed = true;
      if (hooks_.route_log) hooks_.route_log->append(eng_.now(), self_, "expire", dest, 0);
    }
  }
  if (changed) trigger_update();
}

}  // namespace manetsim
