#include "manetsim/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace manetsim {

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot create " + path);
  out << text;
  if (!out) throw IoError("write failure on " + path);
}

}  // namespace

std::string summary_text(const RunResult& r, const ScenarioConfig& cfg) {
  char buf[256];
  std::string out;
  out += std::string("protocol: ") + protocol_name(cfg.protocol) + "\n";
  out += "n_nodes: " + std::to_string(cfg.n_nodes) + "\n";
  std::snprintf(buf, sizeof(buf), "spacing_m: %g\n", cfg.spacing_m);
  out += buf;
  out += std::string("mobility: ") + mobility_name(cfg.mobility) + "\n";
  out += "seed: " + std::to_string(cfg.seed) + "\n";
  out += "frames: " + std::to_string(r.trace.frame_count()) + "\n";
  std::snprintf(buf, sizeof(buf), "loss_rate: %.6f\n", r.metrics.loss_rate);
  out += buf;
  std::snprintf(buf, sizeof(buf), "decodable_ratio: %.6f\n", r.metrics.decodable_ratio);
  out += buf;
  out += std::string("extractable: ") + (r.metrics.extractable ? "yes" : "no") + "\n";
  std::snprintf(buf, sizeof(buf), "mean_psnr_db: %.4f\n", r.metrics.mean_psnr());
  out += buf;
  std::snprintf(buf, sizeof(buf), "mean_abs_jitter_s: %.6f\n", r.metrics.mean_abs_jitter());
  out += buf;
  if (std::isnan(r.time_to_first_frame_s)) {
    out += "time_to_first_frame_s: none\n";
  } else {
    std::snprintf(buf, sizeof(buf), "time_to_first_frame_s: %.6f\n", r.time_to_first_frame_s);
    out += buf;
  }
  out += "routing_drops: " + std::to_string(r.routing_drops) + "\n";
  return out;
}

void write_run_artifacts(const RunResult& r, const ScenarioConfig& cfg,
                         const std::string& dir, size_t ma_window) {
  std::filesystem::create_directories(dir);
  auto path = [&](const char* name) { return dir + "/" + name; };

  r.trace.save(path("trace.txt"));
  r.sender_log.save(path("sender_log.txt"));
  r.receiver_log.save(path("receiver_log.txt"));
  write_text(path("metrics.csv"), r.metrics.to_csv());
  write_text(path("channel_stats.csv"), r.channel_stats.to_csv());
  write_text(path("route_events.csv"), r.route_events.to_csv());
  write_text(path("summary.txt"), summary_text(r, cfg));

  std::vector<double> smooth = moving_average(r.metrics.psnr_db, ma_window);
  std::string psnr_csv = "frame,psnr_smooth_db\n";
  char buf[64];
  for (size_t f = 0; f < smooth.size(); ++f) {
    std::snprintf(buf, sizeof(buf), "%zu,%.4f\n", f, smooth[f]);
    psnr_csv += buf;
  }
  write_text(path("psnr_smooth.csv"), psnr_csv);

  std::string jitter_csv = "frame,jitter_s\n";
  for (size_t f = 0; f < r.metrics.jitter_s.size(); ++f) {
    if (std::isnan(r.metrics.jitter_s[f])) {
      std::snprintf(buf, sizeof(buf), "%zu,\n", f);
    } else {
      std::snprintf(buf, sizeof(buf), "%zu,%.6f\n", f, r.metrics.jitter_s[f]);
    }
    jitter_csv += buf;
  }
  write_text(path("jitter.csv"), jitter_csv);

  if (!r.event_log.empty()) {
    std::string ev;
    for (const std::string& line : r.event_log) {
      ev += line;
      ev += '\n';
    }
    write_text(path("event_log.txt"), ev);
  }
}

}  // namespace manetsim
