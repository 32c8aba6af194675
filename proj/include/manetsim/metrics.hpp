#pragma once

#include <span>
#include <string>
#include <vector>

#include "manetsim/logs.hpp"
#include "manetsim/reconstruct.hpp"
#include "manetsim/video_trace.hpp"
#include "manetsim/yuv.hpp"

namespace manetsim {

struct PsnrConfig {
  double v_peak = 255.0;  // 2^k - 1 for k = 8
  double cap_db = 100.0;  // returned when MSE = 0
};

// Luminance-only PSNR:
//   MSE  = (1/N) * sum (src - dst)^2
//   PSNR = 20 * log10(v_peak / sqrt(MSE)), cap_db when MSE = 0
double psnr_luma(std::span<const uint8_t> src, std::span<const uint8_t> dst,
                 const PsnrConfig& cfg = {});

std::vector<double> psnr_sequence(const YuvSequence& src, const YuvSequence& dst,
                                  const PsnrConfig& cfg = {});

// Inter-frame delay variation over received frames in frame order, where a
// frame's time on each side is its last logged segment:
//   j_i = (r_i - r_prev) - (s_i - s_prev)
// Cumulative mode emits the running sum. Fewer than two received frames
// yield an empty series.
std::vector<double> jitter_series(const SenderLog& sender, const ReceiverLog& receiver,
                                  bool cumulative = false);

struct DelayLoss {
  std::vector<double> delay_s;  // one entry per delivered frame, frame order
  std::vector<uint32_t> delivered_frames;
  double loss_rate = 0.0;  // 1 - delivered/total
};

DelayLoss delay_and_loss(const VideoTrace& trace, const SenderLog& sender,
                         const ReceiverLog& receiver);

// Trailing moving average, clamped at the series start (prefix mean);
// output length equals input length.
std::vector<double> moving_average(const std::vector<double>& series, size_t window = 100);

// Per-frame series aligned to the source frames; NaN marks undefined cells.
struct MetricSeries {
  std::vector<double> psnr_db;
  std::vector<double> delay_s;
  std::vector<double> jitter_s;
  std::vector<uint8_t> delivered;
  std::vector<uint8_t> decodable;
  double loss_rate = 0.0;
  double decodable_ratio = 0.0;
  bool extractable = false;

  double mean_psnr() const;
  double mean_abs_jitter() const;  // over defined entries; 0 if none

  // frame,delivered,decodable,psnr_db,delay_s,jitter_s (empty cell = undefined)
  std::string to_csv() const;
};

MetricSeries build_metric_series(const VideoTrace& trace, const SenderLog& sender,
                                 const ReceiverLog& receiver, const ReconstructedVideo& recon,
                                 const YuvSequence& source, double theta,
                                 const PsnrConfig& cfg = {});

}  // namespace manetsim
