#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "manetsim/engine.hpp"
#include "manetsim/packet.hpp"
#include "manetsim/radio.hpp"
#include "manetsim/rng.hpp"

namespace manetsim {

struct MacParams {
  double slot_s = 20e-6;
  uint32_t cw_min = 32;    // slots
  uint32_t cw_max = 1024;  // slots
  uint32_t retry_limit = 7;  // retransmissions after the first attempt
  double overhead_s = 192e-6;  // fixed PHY+MAC cost per packet
  size_t ifq_capacity = 50;    // waiting packets, excluding the one in service
};

struct KindCounters {
  uint64_t sent = 0;           // offered to the MAC
  uint64_t delivered = 0;      // unicast: acked; broadcast: transmitted
  uint64_t collided = 0;       // receptions corrupted at some node
  uint64_t dropped_queue = 0;
  uint64_t dropped_retry = 0;
  uint64_t in_flight = 0;  // queued or in service at end of run
};

struct ChannelStats {
  KindCounters data, rreq, rrep, rerr, dsdv;

  KindCounters& of(PacketKind kind);
  const KindCounters& of(PacketKind kind) const;
  std::string to_csv() const;
};

// Shared medium: tracks in-flight transmissions, answers carrier-sense
// queries, and resolves per-receiver reception outcomes. Interference range
// equals reception range.
class Channel {
 public:
  using PositionFn = std::function<NodePosition(NodeId, SimTime)>;

  Channel(RadioParams radio, PositionFn positions, uint32_t n_nodes)
      : radio_(radio), positions_(std::move(positions)), n_nodes_(n_nodes) {}

  const RadioParams& radio() const { return radio_; }
  uint32_t node_count() const { return n_nodes_; }

  bool in_range(NodeId a, NodeId b, SimTime t) const;

  // Busy iff some transmission that started strictly earlier is still on the
  // air and audible here. Two nodes starting at the same instant therefore
  // both pass the check and collide, as in slotted contention.
  bool medium_busy(NodeId listener, SimTime now) const;
  SimTime busy_until(NodeId listener, SimTime now) const;

  uint64_t begin_transmission(NodeId sender, const Packet& pkt, SimTime start, SimTime end);

  struct Reception {
    NodeId node = 0;
    bool clean = false;
  };

  // Retires transmission `id` and reports the outcome at every node that was
  // within range; a reception is corrupted by any overlapping audible
  // transmission or by the receiver transmitting itself.
  std::vector<Reception> finish_transmission(uint64_t id, SimTime now);

 private:
  struct TxRecord {
    uint64_t id = 0;
    NodeId sender = 0;
    SimTime start = 0.0;
    SimTime end = 0.0;
    bool done = false;
  };

  void prune(SimTime now);

  RadioParams radio_;
  PositionFn positions_;
  uint32_t n_nodes_;
  uint64_t next_tx_id_ = 1;
  std::vector<TxRecord> txs_;  // active + recently ended
};

// Simplified 802.11 DCF for one node: carrier sense, uniform backoff in
// [0, CW) slots with doubling on retry, virtual ACK for unicast (the fixed
// per-packet overhead covers it), no RTS/CTS, no capture.
class MacLayer {
 public:
  struct Hooks {
    std::function<void(NodeId receiver, const Packet& pkt, NodeId from)> deliver;
    std::function<void(NodeId at, NodeId neighbor, const Packet& pkt)> link_break;
  };

  MacLayer(NodeId self, Engine& eng, Channel& ch, const MacParams& params,
           RngStream rng, ChannelStats& stats, Hooks hooks)
      : self_(self), eng_(eng), ch_(ch), prm_(params), rng_(rng),
        stats_(stats), hooks_(std::move(hooks)) {}

  // Enqueue for transmission; drops (and counts) when the interface queue is
  // full. next_hop must be set or kBroadcastId.
  void send(Packet pkt);

  void on_event(const Event& ev);

  bool serving() const { return current_.has_value(); }
  size_t queue_size() const { return queue_.size(); }
  void count_in_flight(ChannelStats& stats) const;

 private:
  void start_next();
  void attempt();
  void tx_start();
  void tx_end();

  NodeId self_;
  Engine& eng_;
  Channel& ch_;
  MacParams prm_;
  RngStream rng_;
  ChannelStats& stats_;
  Hooks hooks_;

  std::deque<Packet> queue_;
  std::optional<Packet> current_;
  uint32_t retries_ = 0;
  uint32_t cw_ = 0;
  uint64_t live_tx_id_ = 0;
};

}  // namespace manetsim
