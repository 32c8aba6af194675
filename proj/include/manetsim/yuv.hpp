#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "manetsim/errors.hpp"

namespace manetsim {

// One planar I420 frame, 8 bits per sample. Y is width*height, U and V are
// (width/2)*(height/2).
struct YuvFrame {
  std::vector<uint8_t> y, u, v;
};

class YuvSequence {
 public:
  YuvSequence() = default;
  YuvSequence(uint32_t width, uint32_t height);

  uint32_t width() const { return width_; }
  uint32_t height() const { return height_; }
  size_t frame_count() const { return frames_.size(); }
  bool empty() const { return frames_.empty(); }

  size_t luma_samples() const { return size_t(width_) * height_; }
  size_t frame_bytes() const { return luma_samples() * 3 / 2; }

  const YuvFrame& frame(size_t i) const { return frames_[i]; }
  YuvFrame& frame(size_t i) { return frames_[i]; }

  void append_frame(YuvFrame f);
  void truncate(size_t n_frames);

  // Raw planar I420, no header. Round-trips byte for byte.
  static YuvSequence load(const std::string& path, uint32_t width, uint32_t height);
  void store(const std::string& path) const;

 private:
  uint32_t width_ = 0;
  uint32_t height_ = 0;
  std::vector<YuvFrame> frames_;
};

// Deterministic test source: a moving luminance ramp with two scripted
// low-luminance intervals (frames 520-580 and 1250-1310, with 10-frame
// transitions). Pure function of its arguments.
YuvSequence synth_sequence(uint32_t n_frames, uint32_t width, uint32_t height);

}  // namespace manetsim
