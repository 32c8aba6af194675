#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "manetsim/engine.hpp"
#include "manetsim/packet.hpp"

namespace manetsim {

struct RouteInfo {
  NodeId next_hop = 0;
  uint32_t hop_count = 0;
};

struct RouteEvent {
  SimTime t = 0.0;
  NodeId node = 0;
  std::string event;  // discover | install | expire | rerr
  NodeId dest = 0;
  uint32_t hop_count = 0;
};

struct RouteEventLog {
  std::vector<RouteEvent> events;

  void append(SimTime t, NodeId node, const char* event, NodeId dest, uint32_t hops) {
    events.push_back(RouteEvent{t, node, event, dest, hops});
  }
  std::string to_csv() const;
};

// Services a protocol instance needs from its host simulation.
struct RoutingHooks {
  std::function<void(const Packet&)> deliver_local;  // DATA arrived at its dst
  std::function<void(const Packet&)> drop_data;      // routing-level drop
  std::function<uint64_t()> next_uid;
  RouteEventLog* route_log = nullptr;
};

class RoutingProtocol {
 public:
  virtual ~RoutingProtocol() = default;

  virtual void start() {}

  // Data originated by an agent at this node.
  virtual void send_data(Packet pkt) = 0;

  // Clean reception of any packet addressed here (or broadcast).
  virtual void on_receive(const Packet& pkt, NodeId from) = 0;

  // MAC retry exhaustion toward a neighbor.
  virtual void on_link_break(NodeId neighbor) = 0;

  virtual void on_timer(const Event& ev) { (void)ev; }

  // Pure table query: next hop for a currently usable route, or MISS.
  virtual std::optional<RouteInfo> lookup(NodeId dest) const = 0;
};

}  // namespace manetsim
