#include "manetsim/scenario.hpp"

#include <cmath>
#include <set>

namespace manetsim {

const char* protocol_name(Protocol p) {
  return p == Protocol::Aodv ? "aodv" : "dsdv";
}

const char* mobility_name(MobilityMode m) {
  switch (m) {
    case MobilityMode::Static: return "static";
    case MobilityMode::Outward: return "outward";
    case MobilityMode::Inward: return "inward";
  }
  return "unknown";
}

double ScenarioConfig::mobility_d_start() const {
  if (d_start) return *d_start;
  return mobility == MobilityMode::Inward ? 150.0 : 20.0;
}

double ScenarioConfig::mobility_d_end() const {
  if (d_end) return *d_end;
  return mobility == MobilityMode::Inward ? 20.0 : 150.0;
}

void ScenarioConfig::validate() const {
  grid_side(n_nodes);  // throws NotPerfectSquare
  if (n_nodes < 2) throw BadConfig("need at least 2 nodes");
  if (sender_id() >= n_nodes || receiver_id() >= n_nodes) {
    throw BadConfig("sender/receiver outside the grid");
  }
  if (sender_id() == receiver_id()) throw BadConfig("sender equals receiver");
  if (mobility == MobilityMode::Static) {
    if (spacing_m <= 0.0) throw BadConfig("spacing must be positive");
  } else {
    if (mobility_d_start() == mobility_d_end()) {
      throw BadConfig("mobile scenarios need d_start != d_end");
    }
    if (mobility_d_start() <= 0.0 || mobility_d_end() <= 0.0) {
      throw BadConfig("mobility spacings must be positive");
    }
  }
  if (n_frames == 0) throw BadConfig("n_frames must be positive");
  if (video.fps <= 0.0) throw BadConfig("fps must be positive");
  if (video.mtu == 0) throw BadConfig("mtu must be positive");
  if (drain_time_s < 0.0) throw BadConfig("drain_time must be non-negative");
  if (theta <= 0.0 || theta > 1.0) throw BadConfig("theta must be in (0, 1]");
}

MobilityPlan ScenarioConfig::make_plan() const {
  if (mobility == MobilityMode::Static) {
    return MobilityPlan::static_grid(n_nodes, spacing_m);
  }
  return MobilityPlan::scaling_grid(n_nodes, mobility_d_start(), mobility_d_end(),
                                    video_duration_s());
}

NetworkHarness::NetworkHarness(Protocol proto, MobilityPlan plan, uint64_t seed,
                               const RadioParams& radio, const MacParams& mac_params,
                               const AodvParams& aodv_params, const DsdvParams& dsdv_params)
    : plan_(std::move(plan)) {
  uint32_t n = uint32_t(plan_.node_count());
  channel_ = std::make_unique<Channel>(
      radio, [this](NodeId id, SimTime t) { return plan_.position_at(id, t); }, n);

  MacLayer::Hooks mac_hooks{
      [this](NodeId receiver, const Packet& pkt, NodeId from) {
        routers_[receiver]->on_receive(pkt, from);
      },
      [this](NodeId at, NodeId neighbor, const Packet& pkt) {
        (void)pkt;
        routers_[at]->on_link_break(neighbor);
      },
  };

  macs_.reserve(n);
  for (NodeId id = 0; id < n; ++id) {
    macs_.push_back(std::make_unique<MacLayer>(id, eng_, *channel_, mac_params,
                                               derived_stream(seed, "mac", id),
                                               stats_, mac_hooks));
  }

  routers_.reserve(n);
  for (NodeId id = 0; id < n; ++id) {
    RoutingHooks hooks{
        [this, id](const Packet& pkt) {
          if (on_deliver_local) on_deliver_local(id, pkt);
        },
        [this](const Packet&) { ++routing_drops_; },
        [this]() { return next_uid(); },
        &route_log_,
    };
    if (proto == Protocol::Aodv) {
      routers_.push_back(std::make_unique<AodvRouter>(id, eng_, *macs_[id],
                                                      aodv_params, std::move(hooks)));
    } else {
      routers_.push_back(std::make_unique<DsdvRouter>(id, eng_, *macs_[id],
                                                      dsdv_params, std::move(hooks)));
    }
  }

  eng_.set_dispatcher([this](const Event& ev) { dispatch(ev); });
}

void NetworkHarness::dispatch(const Event& ev) {
  switch (ev.kind) {
    case EventKind::MacAttempt:
    case EventKind::MacTxStart:
    case EventKind::MacTxEnd:
      macs_[ev.target]->on_event(ev);
      break;
    case EventKind::FrameGen:
      if (on_frame_gen) on_frame_gen(ev.arg);
      break;
    default:
      routers_[ev.target]->on_timer(ev);
      break;
  }
}

void NetworkHarness::start_protocols() {
  for (auto& r : routers_) r->start();
}

void NetworkHarness::finalize_stats() {
  for (const auto& m : macs_) m->count_in_flight(stats_);
}

RunResult run_scenario(const ScenarioConfig& cfg, const YuvSequence& source) {
  cfg.validate();
  if (source.frame_count() < cfg.n_frames) {
    throw BadConfig("source has " + std::to_string(source.frame_count()) +
                    " frames, scenario needs " + std::to_string(cfg.n_frames));
  }

  AodvParams aodv = cfg.aodv;
  aodv.rreq_ttl = 2 * grid_side(cfg.n_nodes);  // network diameter bound

  NetworkHarness net(cfg.protocol, cfg.make_plan(), cfg.seed, cfg.radio, cfg.mac,
                     aodv, cfg.dsdv);
  if (cfg.record_event_log) net.engine().enable_event_log();

  RunResult result;
  result.trace = generate_trace(source, cfg.video, cfg.n_frames);

  NodeId sender = cfg.sender_id();
  NodeId receiver = cfg.receiver_id();
  std::set<std::pair<uint32_t, uint32_t>> seen_segments;

  net.on_deliver_local = [&](NodeId at, const Packet& pkt) {
    if (at != receiver || pkt.kind != PacketKind::Data) return;
    if (!seen_segments.insert({pkt.frame_id, pkt.segment_index}).second) return;
    result.receiver_log.append(net.engine().now(), pkt.uid, pkt.frame_id,
                               pkt.segment_index);
  };

  net.on_frame_gen = [&](uint64_t f) {
    const TraceEntry& e = result.trace.entries[f];
    uint32_t remaining = e.size_bytes;
    for (uint32_t s = 0; s < e.n_segments; ++s) {
      uint32_t sz = std::min(cfg.video.mtu, remaining);
      remaining -= sz;
      Packet pkt;
      pkt.uid = net.next_uid();
      pkt.kind = PacketKind::Data;
      pkt.src = sender;
      pkt.dst = receiver;
      pkt.prev_hop = sender;
      pkt.frame_id = uint32_t(f);
      pkt.segment_index = s;
      pkt.size_bytes = sz;
      result.sender_log.append(net.engine().now(), pkt.uid, pkt.frame_id, s);
      net.router(sender).send_data(std::move(pkt));
    }
  };

  net.start_protocols();
  for (const TraceEntry& e : result.trace.entries) {
    net.engine().schedule(e.gen_time, sender, EventKind::FrameGen, e.frame_id);
  }

  net.engine().run_until(cfg.video_duration_s() + cfg.drain_time_s);
  net.finalize_stats();

  result.recon = reconstruct(result.trace, result.sender_log, result.receiver_log,
                             source, cfg.concealment, cfg.video.gop_len);
  result.metrics = build_metric_series(result.trace, result.sender_log,
                                       result.receiver_log, result.recon, source,
                                       cfg.theta, cfg.psnr);
  result.channel_stats = net.stats();
  result.route_events = std::move(net.route_log());
  result.routing_drops = net.routing_drops();

  DelayLoss dl = delay_and_loss(result.trace, result.sender_log, result.receiver_log);
  result.time_to_first_frame_s = std::nan("");
  for (size_t i = 0; i < dl.delivered_frames.size(); ++i) {
    double completed = result.trace.entries[dl.delivered_frames[i]].gen_time + dl.delay_s[i];
    if (std::isnan(result.time_to_first_frame_s) || completed < result.time_to_first_frame_s) {
      result.time_to_first_frame_s = completed;
    }
  }

  if (cfg.record_event_log) result.event_log = net.engine().event_log();
  return result;
}

}  // namespace manetsim
