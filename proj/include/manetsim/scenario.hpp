#pragma once

#include <memory>
#include <optional>

#include "manetsim/aodv.hpp"
#include "manetsim/dsdv.hpp"
#include "manetsim/mac.hpp"
#include "manetsim/metrics.hpp"
#include "manetsim/topology.hpp"

namespace manetsim {

enum class Protocol : uint8_t { Aodv, Dsdv };
enum class MobilityMode : uint8_t { Static, Outward, Inward };

const char* protocol_name(Protocol p);
const char* mobility_name(MobilityMode m);

struct ScenarioConfig {
  Protocol protocol = Protocol::Aodv;
  uint32_t n_nodes = 4;
  double spacing_m = 20.0;  // D, static scenarios
  MobilityMode mobility = MobilityMode::Static;
  std::optional<double> d_start;  // defaults: outward 20 -> 150, inward 150 -> 20
  std::optional<double> d_end;
  uint32_t n_frames = 2000;
  uint32_t width = 352;   // source video dimensions (CIF)
  uint32_t height = 288;
  std::optional<NodeId> sender;    // default: corner 0
  std::optional<NodeId> receiver;  // default: opposite corner n-1
  uint64_t seed = 1;
  double drain_time_s = 5.0;
  double theta = 0.05;
  ConcealmentMode concealment = ConcealmentMode::RepeatLast;
  bool record_event_log = false;

  RadioParams radio;
  MacParams mac;
  TraceParams video;  // fps, gop, mtu and the size model
  AodvParams aodv;    // rreq_ttl is derived from the grid side at run time
  DsdvParams dsdv;
  PsnrConfig psnr;

  NodeId sender_id() const { return sender.value_or(0); }
  NodeId receiver_id() const { return receiver.value_or(n_nodes - 1); }
  double video_duration_s() const { return n_frames / video.fps; }
  double mobility_d_start() const;
  double mobility_d_end() const;

  void validate() const;
  MobilityPlan make_plan() const;
};

// Engine + channel + per-node MAC and routing, wired together. run_scenario
// drives it for the full video workload; protocol tests drive it directly
// with custom topologies.
class NetworkHarness {
 public:
  NetworkHarness(Protocol proto, MobilityPlan plan, uint64_t seed,
                 const RadioParams& radio, const MacParams& mac_params,
                 const AodvParams& aodv_params, const DsdvParams& dsdv_params);

  Engine& engine() { return eng_; }
  Channel& channel() { return *channel_; }
  MacLayer& mac(NodeId id) { return *macs_[id]; }
  RoutingProtocol& router(NodeId id) { return *routers_[id]; }
  const RoutingProtocol& router(NodeId id) const { return *routers_[id]; }
  ChannelStats& stats() { return stats_; }
  RouteEventLog& route_log() { return route_log_; }
  const MobilityPlan& plan() const { return plan_; }
  size_t node_count() const { return macs_.size(); }
  uint64_t routing_drops() const { return routing_drops_; }
  uint64_t next_uid() { return ++uid_; }

  void start_protocols();
  void finalize_stats();  // fold queued/in-service packets into the counters

  std::function<void(NodeId at, const Packet& pkt)> on_deliver_local;
  std::function<void(uint64_t frame)> on_frame_gen;

 private:
  void dispatch(const Event& ev);

  MobilityPlan plan_;
  Engine eng_;
  std::unique_ptr<Channel> channel_;
  ChannelStats stats_;
  RouteEventLog route_log_;
  std::vector<std::unique_ptr<MacLayer>> macs_;
  std::vector<std::unique_ptr<RoutingProtocol>> routers_;
  uint64_t uid_ = 0;
  uint64_t routing_drops_ = 0;
};

struct RunResult {
  VideoTrace trace;
  SenderLog sender_log;
  ReceiverLog receiver_log;
  ReconstructedVideo recon;
  MetricSeries metrics;
  ChannelStats channel_stats;
  RouteEventLog route_events;
  uint64_t routing_drops = 0;
  double time_to_first_frame_s = 0.0;  // NaN when nothing was delivered
  std::vector<std::string> event_log;  // filled when record_event_log is set
};

// The full pipeline: trace generation, simulated transmission, reconstruction
// and metrics. `source` must hold at least n_frames frames; only the first
// n_frames are used.
RunResult run_scenario(const ScenarioConfig& cfg, const YuvSequence& source);

}  // namespace manetsim
