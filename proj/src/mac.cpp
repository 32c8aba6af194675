#include "manetsim/mac.hpp"

#include <algorithm>
#include <sstream>

namespace manetsim {

const char* packet_kind_name(PacketKind kind) {
  switch (kind) {
    case PacketKind::Data: return "data";
    case PacketKind::Rreq: return "rreq";
    case PacketKind::Rrep: return "rrep";
    case PacketKind::Rerr: return "rerr";
    case PacketKind::DsdvUpdate: return "dsdv_update";
  }
  return "unknown";
}

KindCounters& ChannelStats::of(PacketKind kind) {
  switch (kind) {
    case PacketKind::Data: return data;
    case PacketKind::Rreq: return rreq;
    case PacketKind::Rrep: return rrep;
    case PacketKind::Rerr: return rerr;
    case PacketKind::DsdvUpdate: return dsdv;
  }
  return data;
}

const KindCounters& ChannelStats::of(PacketKind kind) const {
  return const_cast<ChannelStats*>(this)->of(kind);
}

std::string ChannelStats::to_csv() const {
  std::ostringstream out;
  out << "kind,sent,delivered,collided,dropped_queue,dropped_retry,in_flight\n";
  const PacketKind kinds[] = {PacketKind::Data, PacketKind::Rreq, PacketKind::Rrep,
                              PacketKind::Rerr, PacketKind::DsdvUpdate};
  for (PacketKind k : kinds) {
    const KindCounters& c = of(k);
    out << packet_kind_name(k) << ',' << c.sent << ',' << c.delivered << ','
        << c.collided << ',' << c.dropped_queue << ',' << c.dropped_retry << ','
        << c.in_flight << '\n';
  }
  return out.str();
}

bool Channel::in_range(NodeId a, NodeId b, SimTime t) const {
  if (a == b) return true;
  return manetsim::in_range(positions_(a, t), positions_(b, t), radio_);
}

bool Channel::medium_busy(NodeId listener, SimTime now) const {
  for (const TxRecord& tx : txs_) {
    if (tx.done || tx.start >= now || tx.end <= now) continue;
    if (tx.sender == listener || in_range(tx.sender, listener, now)) return true;
  }
  return false;
}

SimTime Channel::busy_until(NodeId listener, SimTime now) const {
  SimTime until = now;
  for (const TxRecord& tx : txs_) {
    if (tx.done || tx.start >= now || tx.end <= now) continue;
    if (tx.sender == listener || in_range(tx.sender, listener, now)) {
      until = std::max(until, tx.end);
    }
  }
  return until;
}

uint64_t Channel::begin_transmission(NodeId sender, const Packet&, SimTime start, SimTime end) {
  prune(start);
  TxRecord rec{next_tx_id_++, sender, start, end, false};
  txs_.push_back(rec);
  return rec.id;
}

std::vector<Channel::Reception> Channel::finish_transmission(uint64_t id, SimTime now) {
  auto it = std::find_if(txs_.begin(), txs_.end(),
                         [&](const TxRecord& t) { return t.id == id; });
  std::vector<Reception> out;
  if (it == txs_.end()) return out;
  TxRecord tx = *it;
  it->done = true;

  for (NodeId r = 0; r < n_nodes_; ++r) {
    if (r == tx.sender) continue;
    if (!in_range(tx.sender, r, now)) continue;
    bool clean = true;
    for (const TxRecord& other : txs_) {
      if (other.id == tx.id) continue;
      if (other.start >= tx.end || other.end <= tx.start) continue;  // no overlap
      if (other.sender == r || in_range(other.sender, r, now)) {
        clean = false;
        break;
      }
    }
    out.push_back(Reception{r, clean});
  }
  return out;
}

void Channel::prune(SimTime now) {
  // Records are only needed while they can overlap a live transmission.
  constexpr SimTime keep_window = 1.0;
  std::erase_if(txs_, [&](const TxRecord& t) { return t.done && t.end + keep_window < now; });
}

void MacLayer::send(Packet pkt) {
  stats_.of(pkt.kind).sent++;
  if (!current_ && queue_.empty()) {
    current_ = std::move(pkt);
    start_next();
    return;
  }
  if (queue_.size() >= prm_.ifq_capacity) {
    stats_.of(pkt.kind).dropped_queue++;
    return;
  }
  queue_.push_back(std::move(pkt));
}

void MacLayer::on_event(const Event& ev) {
  switch (ev.kind) {
    case EventKind::MacAttempt: attempt(); break;
    case EventKind::MacTxStart: tx_start(); break;
    case EventKind::MacTxEnd: tx_end(); break;
    default: break;
  }
}

void MacLayer::start_next() {
  retries_ = 0;
  cw_ = prm_.cw_min;
  attempt();
}

void MacLayer::attempt() {
  SimTime now = eng_.now();
  if (ch_.medium_busy(self_, now)) {
    eng_.schedule(ch_.busy_until(self_, now), self_, EventKind::MacAttempt);
    return;
  }
  uint32_t slots = rng_.uniform_int(cw_);
  eng_.schedule(now + slots * prm_.slot_s, self_, EventKind::MacTxStart);
}

void MacLayer::tx_start() {
  SimTime now = eng_.now();
  if (ch_.medium_busy(self_, now)) {
    // Someone started during our backoff; re-contend when they finish.
    eng_.schedule(ch_.busy_until(self_, now), self_, EventKind::MacAttempt);
    return;
  }
  double airtime = current_->size_bytes * 8.0 / ch_.radio().bitrate_bps + prm_.overhead_s;
  current_->sent_at = now;
  live_tx_id_ = ch_.begin_transmission(self_, *current_, now, now + airtime);
  eng_.schedule(now + airtime, self_, EventKind::MacTxEnd, live_tx_id_);
}

void MacLayer::tx_end() {
  SimTime now = eng_.now();
  std::vector<Channel::Reception> recs = ch_.finish_transmission(live_tx_id_, now);
  Packet pkt = *current_;
  KindCounters& counters = stats_.of(pkt.kind);

  for (const auto& r : recs) {
    if (!r.clean) counters.collided++;
  }

  if (pkt.is_broadcast()) {
    counters.delivered++;
    for (const auto& r : recs) {
      if (r.clean) hooks_.deliver(r.node, pkt, self_);
    }
  } else {
    bool acked = std::any_of(recs.begin(), recs.end(), [&](const Channel::Reception& r) {
      return r.node == pkt.next_hop && r.clean;
    });
    if (acked) {
      counters.delivered++;
      hooks_.deliver(pkt.next_hop, pkt, self_);
    } else if (retries_ < prm_.retry_limit) {
      ++retries_;
      cw_ = std::min(cw_ * 2, prm_.cw_max);
      attempt();
      return;  // keep current_
    } else {
      counters.dropped_retry++;
      hooks_.link_break(self_, pkt.next_hop, pkt);
    }
  }

  current_.reset();
  if (!queue_.empty()) {
    current_ = std::move(queue_.front());
    queue_.pop_front();
    start_next();
  }
}

void MacLayer::count_in_flight(ChannelStats& stats) const {
  if (current_) stats.of(current_->kind).in_flight++;
  for (const Packet& p : queue_) stats.of(p.kind).in_flight++;
}

}  // namespace manetsim
