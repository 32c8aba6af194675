#include "manetsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "manetsim/pixel_kernels.hpp"

namespace manetsim {

double psnr_luma(std::span<const uint8_t> src, std::span<const uint8_t> dst,
                 const PsnrConfig& cfg) {
  if (src.size() != dst.size() || src.empty()) {
    throw DimensionMismatch("psnr over planes of different sizes");
  }
  uint64_t ssd = pixel_kernels().ssd_u8(src.data(), dst.data(), src.size());
  if (ssd == 0) return cfg.cap_db;
  double mse = double(ssd) / double(src.size());
  return 20.0 * std::log10(cfg.v_peak / std::sqrt(mse));
}

std::vector<double> psnr_sequence(const YuvSequence& src, const YuvSequence& dst,
                                  const PsnrConfig& cfg) {
  if (src.width() != dst.width() || src.height() != dst.height()) {
    throw DimensionMismatch("psnr over sequences of different dimensions");
  }
  size_t n = std::min(src.frame_count(), dst.frame_count());
  std::vector<double> out;
  out.reserve(n);
  for (size_t f = 0; f < n; ++f) {
    out.push_back(psnr_luma(src.frame(f).y, dst.frame(f).y, cfg));
  }
  return out;
}

namespace {

// frame id -> time of its last logged segment
std::map<uint32_t, double> last_segment_times(const SegmentLog& log) {
  std::map<uint32_t, double> t;
  for (const SegmentRecord& r : log.records) {
    auto [it, fresh] = t.emplace(r.frame_id, r.t);
    if (!fresh) it->second = std::max(it->second, r.t);
  }
  return t;
}

}  // namespace

std::vector<double> jitter_series(const SenderLog& sender, const ReceiverLog& receiver,
                                  bool cumulative) {
  std::map<uint32_t, double> s = last_segment_times(sender);
  std::map<uint32_t, double> r = last_segment_times(receiver);

  std::vector<double> out;
  bool have_prev = false;
  double prev_s = 0.0, prev_r = 0.0, running = 0.0;
  for (const auto& [frame, rt] : r) {
    auto si = s.find(frame);
    if (si == s.end()) continue;
    if (have_prev) {
      double j = (rt - prev_r) - (si->second - prev_s);
      running += j;
      out.push_back(cumulative ? running : j);
    }
    prev_s = si->second;
    prev_r = rt;
    have_prev = true;
  }
  return out;
}

DelayLoss delay_and_loss(const VideoTrace& trace, const SenderLog&,
                         const ReceiverLog& receiver) {
  size_t n = trace.entries.size();
  std::vector<std::vector<bool>> seen(n);
  std::vector<double> complete_at(n, 0.0);
  std::vector<uint32_t> remaining(n);
  for (size_t f = 0; f < n; ++f) {
    seen[f].assign(trace.entries[f].n_segments, false);
    remaining[f] = trace.entries[f].n_segments;
  }
  for (const SegmentRecord& rec : receiver.records) {
    if (rec.frame_id >= n || rec.segment_index >= seen[rec.frame_id].size()) continue;
    if (!seen[rec.frame_id][rec.segment_index]) {
      seen[rec.frame_id][rec.segment_index] = true;
      remaining[rec.frame_id]--;
    }
    complete_at[rec.frame_id] = std::max(complete_at[rec.frame_id], rec.t);
  }

  DelayLoss out;
  for (size_t f = 0; f < n; ++f) {
    if (remaining[f] == 0 && trace.entries[f].n_segments > 0) {
      out.delivered_frames.push_back(uint32_t(f));
      out.delay_s.push_back(complete_at[f] - trace.entries[f].gen_time);
    }
  }
  out.loss_rate = n == 0 ? 0.0 : 1.0 - double(out.delivered_frames.size()) / double(n);
  return out;
}

std::vector<double> moving_average(const std::vector<double>& series, size_t window) {
  if (window == 0) window = 1;
  std::vector<double> out(series.size());
  double sum = 0.0;
  for (size_t i = 0; i < series.size(); ++i) {
    sum += series[i];
    if (i >= window) sum -= series[i - window];
    out[i] = sum / double(std::min(i + 1, window));
  }
  return out;
}

double MetricSeries::mean_psnr() const {
  if (psnr_db.empty()) return 0.0;
  double s = 0.0;
  for (double v : psnr_db) s += v;
  return s / double(psnr_db.size());
}

double MetricSeries::mean_abs_jitter() const {
  double s = 0.0;
  size_t n = 0;
  for (double v : jitter_s) {
    if (!std::isnan(v)) {
      s += std::fabs(v);
      ++n;
    }
  }
  return n == 0 ? 0.0 : s / double(n);
}

std::string MetricSeries::to_csv() const {
  std::string out = "frame,delivered,decodable,psnr_db,delay_s,jitter_s\n";
  char buf[160];
  for (size_t f = 0; f < psnr_db.size(); ++f) {
    std::string delay = std::isnan(delay_s[f]) ? "" : (std::snprintf(buf, sizeof(buf), "%.6f", delay_s[f]), buf);
    std::string jitter = std::isnan(jitter_s[f]) ? "" : (std::snprintf(buf, sizeof(buf), "%.6f", jitter_s[f]), buf);
    char line[224];
    std::snprintf(line, sizeof(line), "%zu,%u,%u,%.4f,%s,%s\n", f, delivered[f],
                  decodable[f], psnr_db[f], delay.c_str(), jitter.c_str());
    out += line;
  }
  return out;
}

MetricSeries build_metric_series(const VideoTrace& trace, const SenderLog& sender,
                                 const ReceiverLog& receiver, const ReconstructedVideo& recon,
                                 const YuvSequence& source, double theta,
                                 const PsnrConfig& cfg) {
  size_t n = trace.entries.size();
  MetricSeries m;
  m.psnr_db = psnr_sequence(source, recon.video, cfg);
  m.psnr_db.resize(n, cfg.cap_db);
  m.delay_s.assign(n, std::nan(""));
  m.jitter_s.assign(n, std::nan(""));
  m.delivered.assign(n, 0);
  m.decodable.assign(n, 0);

  for (size_t f = 0; f < n && f < recon.status.size(); ++f) {
    m.delivered[f] = recon.status[f] != FrameStatus::Lost;
    m.decodable[f] = recon.status[f] == FrameStatus::DeliveredDecodable;
  }

  DelayLoss dl = delay_and_loss(trace, sender, receiver);
  for (size_t i = 0; i < dl.delivered_frames.size(); ++i) {
    m.delay_s[dl.delivered_frames[i]] = dl.delay_s[i];
  }
  m.loss_rate = dl.loss_rate;

  // Align the jitter series with the received frames it is defined over.
  std::map<uint32_t, double> rt = last_segment_times(receiver);
  std::map<uint32_t, double> st = last_segment_times(sender);
  std::vector<double> js = jitter_series(sender, receiver, false);
  size_t idx = 0;
  bool first = true;
  for (const auto& [frame, t] : rt) {
    (void)t;
    if (st.find(frame) == st.end()) continue;
    if (first) {
      first = false;
      continue;
    }
    if (idx < js.size() && frame < n) m.jitter_s[frame] = js[idx];
    ++idx;
  }

  m.decodable_ratio = recon.decodable_ratio();
  m.extractable = m.decodable_ratio >= theta;
  return m;
}

}  // namespace manetsim
