#pragma once

#include <map>

#include "manetsim/mac.hpp"
#include "manetsim/routing.hpp"

namespace manetsim {

struct DsdvParams {
  double update_period_s = 15.0;
  double settling_s = 6.0;
  double min_trigger_gap_s = 1.0;
  // Node i sends its first full dump at i * startup_stagger_s. A fixed
  // per-id offset keeps protocol timing comparable across scenarios that
  // differ only in spacing.
  double startup_stagger_s = 0.01;
  uint32_t header_bytes = 28;
  uint32_t entry_bytes = 12;
};

struct DsdvRouteEntry {
  NodeId dest = 0;
  NodeId next_hop = 0;
  uint32_t metric = kInfMetric;  // hop count; kInfMetric = broken
  uint32_t seq = 0;              // even reachable, odd broken
  SimTime installed_at = 0.0;
  bool settling = false;
  SimTime settle_until = 0.0;
};

// Proactive distance-vector routing: periodic full-table broadcasts with
// destination sequence numbers, settling-time suppression of not-yet-stable
// routes, and immediate advertisement of broken links. No on-demand
// discovery: packets without a route are dropped.
class DsdvRouter : public RoutingProtocol {
 public:
  DsdvRouter(NodeId self, Engine& eng, MacLayer& mac, DsdvParams params, RoutingHooks hooks);

  void start() override;
  void send_data(Packet pkt) override;
  void on_receive(const Packet& pkt, NodeId from) override;
  void on_link_break(NodeId neighbor) override;
  void on_timer(const Event& ev) override;
  std::optional<RouteInfo> lookup(NodeId dest) const override;

  const std::map<NodeId, DsdvRouteEntry>& table() const { return table_; }
  uint32_t own_seq() const { return table_.at(self_).seq; }

 private:
  void broadcast_update();
  void process_update(const Packet& pkt, NodeId from);
  void handle_data(const Packet& pkt);
  void trigger_update();
  void adopt(DsdvRouteEntry& e, NodeId from, uint32_t metric, uint32_t seq, bool settle);

  NodeId self_;
  Engine& eng_;
  MacLayer& mac_;
  DsdvParams prm_;
  RoutingHooks hooks_;

  std::map<NodeId, DsdvRouteEntry> table_;  // includes own entry
  bool trigger_pending_ = false;
  SimTime last_trigger_ = -1e9;
};

}  // namespace manetsim
