#include "manetsim/aodv.hpp"

#include <algorithm>

namespace manetsim {

std::string RouteEventLog::to_csv() const {
  std::string out = "time,node,event,dest,hop_count\n";
  char buf[96];
  for (const RouteEvent& e : events) {
    std::snprintf(buf, sizeof(buf), "%.6f,%u,%s,%u,%u\n", e.t, e.node,
                  e.event.c_str(), e.dest, e.hop_count);
    out += buf;
  }
  return out;
}

std::optional<RouteInfo> AodvRouter::lookup(NodeId dest) const {
  if (dest == self_) return RouteInfo{self_, 0};
  auto it = table_.find(dest);
  if (it == table_.end() || !it->second.valid || it->second.expires_at <= eng_.now()) {
    return std::nullopt;
  }
  return RouteInfo{it->second.next_hop, it->second.hop_count};
}

AodvRouteEntry* AodvRouter::usable_entry(NodeId dest) {
  auto it = table_.find(dest);
  if (it == table_.end()) return nullptr;
  AodvRouteEntry& e = it->second;
  if (e.valid && e.expires_at <= eng_.now()) {
    e.valid = false;
    if (hooks_.route_log) hooks_.route_log->append(eng_.now(), self_, "expire", dest, e.hop_count);
  }
  return e.valid ? &e : nullptr;
}

void AodvRouter::maybe_install(NodeId dest, NodeId next_hop, uint32_t hops, uint32_t seq) {
  if (dest == self_) return;
  SimTime now = eng_.now();
  auto it = table_.find(dest);
  bool adopt = false;
  if (it == table_.end()) {
    adopt = true;
  } else {
    AodvRouteEntry& e = it->second;
    bool usable = e.valid && e.expires_at > now;
    adopt = seq > e.dest_seq || (seq == e.dest_seq && hops < e.hop_count) || !usable;
    if (!adopt && seq == e.dest_seq && next_hop == e.next_hop) {
      e.expires_at = std::max(e.expires_at, now + prm_.active_route_timeout_s);
    }
  }
  if (!adopt) return;
  table_[dest] = AodvRouteEntry{dest, next_hop, hops, seq,
                                now + prm_.active_route_timeout_s, true};
  if (hooks_.route_log) hooks_.route_log->append(now, self_, "install", dest, hops);
}

void AodvRouter::send_data(Packet pkt) {
  if (pkt.dst == self_) {
    hooks_.deliver_local(pkt);
    return;
  }
  if (AodvRouteEntry* e = usable_entry(pkt.dst)) {
    forward_data(std::move(pkt), *e);
    return;
  }
  auto it = pending_.find(pkt.dst);
  if (it != pending_.end()) {
    // Discovery already in flight; just buffer.
    if (it->second.buffer.size() >= prm_.buffer_capacity) {
      hooks_.drop_data(pkt);
    } else {
      it->second.buffer.emplace_back(std::move(pkt), eng_.now());
    }
    return;
  }
  NodeId dest = pkt.dst;
  Pending& p = pending_[dest];
  p.buffer.emplace_back(std::move(pkt), eng_.now());
  start_discovery(dest);
}

void AodvRouter::start_discovery(NodeId dest) {
  Pending& p = pending_[dest];
  p.attempt = 0;
  ++own_seq_;
  if (hooks_.route_log) hooks_.route_log->append(eng_.now(), self_, "discover", dest, 0);
  flood_rreq(dest, p);
}

void AodvRouter::flood_rreq(NodeId dest, Pending& p) {
  Packet pkt;
  pkt.uid = hooks_.next_uid();
  pkt.kind = PacketKind::Rreq;
  pkt.src = self_;
  pkt.dst = dest;
  pkt.prev_hop = self_;
  pkt.next_hop = kBroadcastId;
  pkt.size_bytes = kRreqBytes;
  pkt.ttl = prm_.rreq_ttl;
  pkt.rreq.origin = self_;
  pkt.rreq.origin_seq = own_seq_;
  pkt.rreq.rreq_id = next_rreq_id_++;
  pkt.rreq.dest = dest;
  auto it = table_.find(dest);
  if (it != table_.end()) {
    pkt.rreq.known_dest_seq = it->second.dest_seq;
    pkt.rreq.has_known_seq = true;
  }
  pkt.rreq.hop_count = 0;
  seen_rreqs_.insert({self_, pkt.rreq.rreq_id});
  mac_.send(std::move(pkt));
  p.timer = eng_.schedule(eng_.now() + prm_.rrep_wait_s, self_,
                          EventKind::AodvRrepTimeout, dest);
}

void AodvRouter::on_timer(const Event& ev) {
  if (ev.kind != EventKind::AodvRrepTimeout) return;
  NodeId dest = NodeId(ev.arg);
  auto it = pending_.find(dest);
  if (it == pending_.end()) return;
  if (usable_entry(dest)) {
    finish_discovery(dest);
    return;
  }
  Pending& p = it->second;
  if (p.attempt < prm_.rreq_retries) {
    ++p.attempt;
    flood_rreq(dest, p);
  } else {
    fail_discovery(dest);
  }
}

void AodvRouter::finish_discovery(NodeId dest) {
  auto it = pending_.find(dest);
  if (it == pending_.end()) return;
  Pending p = std::move(it->second);
  pending_.erase(it);
  eng_.cancel(p.timer);
  SimTime now = eng_.now();
  for (auto& [pkt, enqueued_at] : p.buffer) {
    if (now - enqueued_at > prm_.buffer_timeout_s) {
      hooks_.drop_data(pkt);
      continue;
    }
    if (AodvRouteEntry* e = usable_entry(dest)) {
      forward_data(std::move(pkt), *e);
    } else {
      hooks_.drop_data(pkt);
    }
  }
}

void AodvRouter::fail_discovery(NodeId dest) {
  auto it = pending_.find(dest);
  if (it == pending_.end()) return;
  for (auto& [pkt, enqueued_at] : it->second.buffer) {
    (void)enqueued_at;
    hooks_.drop_data(pkt);
  }
  pending_.erase(it);
}

void AodvRouter::forward_data(Packet pkt, const AodvRouteEntry& entry) {
  // Active use refreshes the route.
  table_[entry.dest].expires_at =
      std::max(table_[entry.dest].expires_at, eng_.now() + prm_.active_route_timeout_s);
  pkt.prev_hop = self_;
  pkt.next_hop = entry.next_hop;
  mac_.send(std::move(pkt));
}

void AodvRouter::on_receive(const Packet& pkt, NodeId from) {
  switch (pkt.kind) {
    case PacketKind::Rreq: handle_rreq(pkt, from); break;
    case PacketKind::Rrep: handle_rrep(pkt, from); break;
    case PacketKind::Rerr: handle_rerr(pkt, from); break;
    case PacketKind::Data: handle_data(pkt); break;
    default: break;
  }
}

void AodvRouter::handle_data(const Packet& pkt) {
  if (pkt.dst == self_) {
    hooks_.deliver_local(pkt);
    return;
  }
  if (AodvRouteEntry* e = usable_entry(pkt.dst)) {
    forward_data(pkt, *e);
    return;
  }
  // No usable route mid-path: drop, and remind upstream holders (the RERR at
  // invalidation time is a broadcast and may have been lost).
  hooks_.drop_data(pkt);
  SimTime now = eng_.now();
  auto it = last_rerr_.find(pkt.dst);
  if (it == last_rerr_.end() || now - it->second >= prm_.rerr_rate_limit_s) {
    last_rerr_[pkt.dst] = now;
    uint32_t seq = 0;
    if (auto te = table_.find(pkt.dst); te != table_.end()) seq = te->second.dest_seq;
    broadcast_rerr({RerrEntry{pkt.dst, seq}});
  }
}

void AodvRouter::handle_rreq(const Packet& pkt, NodeId from) {
  const RreqInfo& rq = pkt.rreq;
  if (rq.origin == self_) return;
  if (!seen_rreqs_.insert({rq.origin, rq.rreq_id}).second) return;

  maybe_install(rq.origin, from, rq.hop_count + 1, rq.origin_seq);

  if (rq.dest == self_) {
    own_seq_ = std::max(own_seq_, rq.has_known_seq ? rq.known_dest_seq : 0);
    send_rrep(rq.origin, from, self_, own_seq_, 0, prm_.active_route_timeout_s);
    return;
  }

  auto it = table_.find(rq.dest);
  bool fresh = it != table_.end() && it->second.valid &&
               it->second.expires_at > eng_.now() &&
               (!rq.has_known_seq || it->second.dest_seq >= rq.known_dest_seq);
  if (fresh) {
    send_rrep(rq.origin, from, rq.dest, it->second.dest_seq, it->second.hop_count,
              it->second.expires_at - eng_.now());
    return;
  }

  if (pkt.ttl <= 1) return;  // discard at ttl 0
  Packet fwd = pkt;
  fwd.uid = hooks_.next_uid();
  fwd.prev_hop = self_;
  fwd.ttl = pkt.ttl - 1;
  fwd.rreq.hop_count = rq.hop_count + 1;
  mac_.send(std::move(fwd));
}

void AodvRouter::send_rrep(NodeId origin, NodeId via, NodeId about, uint32_t seq,
                           uint32_t hops, double lifetime) {
  Packet pkt;
  pkt.uid = hooks_.next_uid();
  pkt.kind = PacketKind::Rrep;
  pkt.src = self_;
  pkt.dst = origin;
  pkt.prev_hop = self_;
  pkt.next_hop = via;
  pkt.size_bytes = kRrepBytes;
  pkt.rrep = RrepInfo{about, seq, hops, lifetime};
  mac_.send(std::move(pkt));
}

void AodvRouter::handle_rrep(const Packet& pkt, NodeId from) {
  const RrepInfo& rp = pkt.rrep;
  maybe_install(rp.dest, from, rp.hop_count + 1, rp.dest_seq);

  if (pkt.dst == self_) {
    if (usable_entry(rp.dest)) finish_discovery(rp.dest);
    return;
  }
  // Relay along the reverse path toward the discovery origin.
  if (AodvRouteEntry* rev = usable_entry(pkt.dst)) {
    Packet fwd = pkt;
    fwd.uid = hooks_.next_uid();
    fwd.prev_hop = self_;
    fwd.next_hop = rev->next_hop;
    fwd.rrep.hop_count = rp.hop_count + 1;
    mac_.send(std::move(fwd));
  }
}

void AodvRouter::on_link_break(NodeId neighbor) {
  std::vector<RerrEntry> broken;
  for (auto& [dest, e] : table_) {
    if (e.valid && e.next_hop == neighbor) {
      e.dest_seq += 1;
      e.valid = false;
      broken.push_back(RerrEntry{dest, e.dest_seq});
      if (hooks_.route_log) hooks_.route_log->append(eng_.now(), self_, "rerr", dest, e.hop_count);
    }
  }
  if (!broken.empty()) broadcast_rerr(std::move(broken));
}

void AodvRouter::broadcast_rerr(std::vector<RerrEntry> broken) {
  Packet pkt;
  pkt.uid = hooks_.next_uid();
  pkt.kind = PacketKind::Rerr;
  pkt.src = self_;
  pkt.dst = kBroadcastId;
  pkt.prev_hop = self_;
  pkt.next_hop = kBroadcastId;
  pkt.size_bytes = kRerrBaseBytes + kRerrEntryBytes * uint32_t(broken.size());
  pkt.ttl = 1;
  pkt.rerr = std::move(broken);
  mac_.send(std::move(pkt));
}

void AodvRouter::handle_rerr(const Packet& pkt, NodeId from) {
  std::vector<RerrEntry> cascaded;
  for (const RerrEntry& re : pkt.rerr) {
    auto it = table_.find(re.dest);
    if (it == table_.end()) continue;
    AodvRouteEntry& e = it->second;
    if (e.valid && e.next_hop == from) {
      e.dest_seq = std::max(e.dest_seq, re.dest_seq);
      e.valid = false;
      cascaded.push_back(RerrEntry{re.dest, e.dest_seq});
      if (hooks_.route_log) hooks_.route_log->append(eng_.now(), self_, "rerr", re.dest, e.hop_count);
    }
  }
  if (!cascaded.empty()) broadcast_rerr(std::move(cascaded));
}

}  // namespace manetsim
