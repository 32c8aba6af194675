#pragma once

#include <string>
#include <vector>

#include "manetsim/engine.hpp"
#include "manetsim/yuv.hpp"

namespace manetsim {

enum class FrameType : uint8_t { I, P };

struct TraceEntry {
  uint32_t frame_id = 0;
  FrameType type = FrameType::I;
  uint32_t size_bytes = 0;
  uint32_t n_segments = 0;
  SimTime gen_time = 0.0;
};

// Surrogate frame-size model: no real codec, but sizes follow content so
// darker / lower-motion frames produce smaller frames.
//   I: clamp(base_i + alpha * meanAbsDev(Y))
//   P: clamp(base_p + beta  * mean|Y_t - Y_(t-1)|)
struct TraceParams {
  double fps = 30.0;
  uint32_t gop_len = 30;  // I every gop_len frames, the rest P
  uint32_t mtu = 1024;
  double base_i = 6000.0;
  double base_p = 1500.0;
  double alpha = 60.0;   // bytes per unit of spatial activity
  double beta = 140.0;   // bytes per unit of temporal difference
  uint32_t size_min = 200;
  uint32_t size_max = 30000;
};

class VideoTrace {
 public:
  std::vector<TraceEntry> entries;

  size_t frame_count() const { return entries.size(); }
  uint64_t total_bytes() const;

  // One line per frame: <frame_id> <I|P> <size_bytes> <n_segments> <gen_time 6dec>
  void save(const std::string& path) const;
  static VideoTrace load(const std::string& path);
};

// Pure function of (sequence bytes, params); at most max_frames entries.
VideoTrace generate_trace(const YuvSequence& seq, const TraceParams& params = {},
                          size_t max_frames = SIZE_MAX);

// Content measures used by the size model; exact integer-derived values.
double spatial_activity(const YuvFrame& frame);
double temporal_diff(const YuvFrame& cur, const YuvFrame& prev);

}  // namespace manetsim
