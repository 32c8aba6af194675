#pragma once

#include <deque>
#include <set>
#include <unordered_map>

#include "manetsim/mac.hpp"
#include "manetsim/routing.hpp"

namespace manetsim {

struct AodvParams {
  double active_route_timeout_s = 10.0;
  double rrep_wait_s = 1.0;   // per discovery attempt
  uint32_t rreq_retries = 2;  // re-floods after the first
  uint32_t rreq_ttl = 16;     // network diameter bound, 2*ceil(sqrt(N)) for grids
  size_t buffer_capacity = 64;
  double buffer_timeout_s = 30.0;
  double rerr_rate_limit_s = 1.0;  // min gap between RERRs for the same dest
};

struct AodvRouteEntry {
  NodeId dest = 0;
  NodeId next_hop = 0;
  uint32_t hop_count = 0;
  uint32_t dest_seq = 0;
  SimTime expires_at = 0.0;
  bool valid = false;
};

inline constexpr uint32_t kRreqBytes = 24;
inline constexpr uint32_t kRrepBytes = 20;
inline constexpr uint32_t kRerrBaseBytes = 12;
inline constexpr uint32_t kRerrEntryBytes = 8;

// Reactive route discovery: flooded RREQs, unicast RREPs along the reverse
// path, RERRs on link break. No expanding ring, no local repair, no HELLOs;
// link failure comes solely from MAC retry exhaustion.
class AodvRouter : public RoutingProtocol {
 public:
  AodvRouter(NodeId self, Engine& eng, MacLayer& mac, AodvParams params, RoutingHooks hooks)
      : self_(self), eng_(eng), mac_(mac), prm_(params), hooks_(std::move(hooks)) {}

  void send_data(Packet pkt) override;
  void on_receive(const Packet& pkt, NodeId from) override;
  void on_link_break(NodeId neighbor) override;
  void on_timer(const Event& ev) override;
  std::optional<RouteInfo> lookup(NodeId dest) const override;

  const std::unordered_map<NodeId, AodvRouteEntry>& table() const { return table_; }
  uint32_t own_seq() const { return own_seq_; }
  bool discovery_pending(NodeId dest) const { return pending_.count(dest) != 0; }

 private:
  struct Pending {
    uint32_t attempt = 0;
    EventHandle timer = 0;
    std::deque<std::pair<Packet, SimTime>> buffer;  // packet, enqueue time
  };

  void handle_rreq(const Packet& pkt, NodeId from);
  void handle_rrep(const Packet& pkt, NodeId from);
  void handle_rerr(const Packet& pkt, NodeId from);
  void handle_data(const Packet& pkt);

  // Standard freshness rule: adopt when the sequence number is newer, or
  // equal with a shorter hop count, or the current entry is unusable.
  void maybe_install(NodeId dest, NodeId next_hop, uint32_t hops, uint32_t seq);
  void start_discovery(NodeId dest);
  void flood_rreq(NodeId dest, Pending& p);
  void finish_discovery(NodeId dest);
  void fail_discovery(NodeId dest);
  void send_rrep(NodeId origin, NodeId via, NodeId about, uint32_t seq, uint32_t hops,
                 double lifetime);
  void broadcast_rerr(std::vector<RerrEntry> broken);
  void forward_data(Packet pkt, const AodvRouteEntry& entry);
  AodvRouteEntry* usable_entry(NodeId dest);

  NodeId self_;
  Engine& eng_;
  MacLayer& mac_;
  AodvParams prm_;
  RoutingHooks hooks_;

  std::unordered_map<NodeId, AodvRouteEntry> table_;
  std::unordered_map<NodeId, Pending> pending_;
  std::set<std::pair<NodeId, uint32_t>> seen_rreqs_;  // (origin, rreq_id)
  std::unordered_map<NodeId, SimTime> last_rerr_;
  uint32_t own_seq_ = 0;
  uint32_t next_rreq_id_ = 0;
};

}  // namespace manetsim
