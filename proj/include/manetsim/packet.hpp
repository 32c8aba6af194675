#pragma once

#include <cstdint>
#include <vector>

#include "manetsim/engine.hpp"

namespace manetsim {

enum class PacketKind : uint8_t { Data, Rreq, Rrep, Rerr, DsdvUpdate };

const char* packet_kind_name(PacketKind kind);

inline constexpr uint32_t kInfMetric = 0xFFFFFFFFu;

struct RreqInfo {
  NodeId origin = 0;
  uint32_t origin_seq = 0;
  uint32_t rreq_id = 0;
  NodeId dest = 0;
  uint32_t known_dest_seq = 0;
  bool has_known_seq = false;
  uint32_t hop_count = 0;
};

struct RrepInfo {
  NodeId dest = 0;
  uint32_t dest_seq = 0;
  uint32_t hop_count = 0;
  double lifetime_s = 0.0;
};

struct RerrEntry {
  NodeId dest = 0;
  uint32_t dest_seq = 0;
};

struct RouteAdvert {
  NodeId dest = 0;
  uint32_t metric = 0;  // kInfMetric when broken
  uint32_t seq = 0;     // even reachable, odd broken
};

// One frame segment (or routing message) in flight. next_hop == kBroadcastId
// marks a broadcast.
struct Packet {
  uint64_t uid = 0;
  PacketKind kind = PacketKind::Data;
  NodeId src = 0;
  NodeId dst = 0;
  NodeId prev_hop = 0;
  NodeId next_hop = 0;
  uint32_t frame_id = 0;       // DATA only
  uint32_t segment_index = 0;  // DATA only
  uint32_t size_bytes = 0;
  uint32_t ttl = 0;
  SimTime sent_at = 0.0;

  RreqInfo rreq;
  RrepInfo rrep;
  std::vector<RerrEntry> rerr;
  std::vector<RouteAdvert> dsdv;

  bool is_broadcast() const { return next_hop == kBroadcastId; }
};

}  // namespace manetsim
