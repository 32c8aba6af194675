#include "manetsim/yuv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace manetsim {

YuvSequence::YuvSequence(uint32_t width, uint32_t height) : width_(width), height_(height) {
  if (width == 0 || height == 0 || width % 2 != 0 || height % 2 != 0) {
    throw BadDimensions("frame dimensions must be positive and even");
  }
}

void YuvSequence::append_frame(YuvFrame f) {
  size_t luma = luma_samples();
  size_t chroma = luma / 4;
  if (f.y.size() != luma || f.u.size() != chroma || f.v.size() != chroma) {
    throw BadDimensions("plane sizes do not match sequence dimensions");
  }
  frames_.push_back(std::move(f));
}

void YuvSequence::truncate(size_t n_frames) {
  if (frames_.size() > n_frames) frames_.resize(n_frames);
}

YuvSequence YuvSequence::load(const std::string& path, uint32_t width, uint32_t height) {
  YuvSequence seq(width, height);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  in.seekg(0, std::ios::end);
  uint64_t bytes = uint64_t(in.tellg());
  in.seekg(0);
  size_t fb = seq.frame_bytes();
  if (bytes % fb != 0) {
    throw TruncatedFile(path + ": size " + std::to_string(bytes) +
                        " is not a multiple of frame size " + std::to_string(fb));
  }
  size_t n = bytes / fb;
  size_t luma = seq.luma_samples();
  size_t chroma = luma / 4;
  seq.frames_.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    YuvFrame f;
    f.y.resize(luma);
    f.u.resize(chroma);
    f.v.resize(chroma);
    in.read(reinterpret_cast<char*>(f.y.data()), luma);
    in.read(reinterpret_cast<char*>(f.u.data()), chroma);
    in.read(reinterpret_cast<char*>(f.v.data()), chroma);
    if (!in) throw IoError("read failure on " + path);
    seq.frames_.push_back(std::move(f));
  }
  return seq;
}

void YuvSequence::store(const std::string& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot create " + path);
  for (const YuvFrame& f : frames_) {
    out.write(reinterpret_cast<const char*>(f.y.data()), f.y.size());
    out.write(reinterpret_cast<const char*>(f.u.data()), f.u.size());
    out.write(reinterpret_cast<const char*>(f.v.data()), f.v.size());
  }
  if (!out) throw IoError("write failure on " + path);
}

namespace {

// Luminance scale over time: 1.0 nominally, dipping to 0.35 across two
// scripted intervals.
double luma_scale(uint32_t f) {
  struct Dip { uint32_t start, end; };  // full-depth span; 10-frame ramps outside
  constexpr Dip dips[] = {{520, 580}, {1250, 1310}};
  constexpr double depth = 0.35;
  constexpr uint32_t ramp = 10;
  for (const Dip& d : dips) {
    if (f + ramp >= d.start && f < d.start) {
      double k = double(d.start - f) / ramp;  // 1..0 entering
      return depth + (1.0 - depth) * k;
    }
    if (f >= d.start && f < d.end) return depth;
    if (f >= d.end && f < d.end + ramp) {
      double k = double(f - d.end) / ramp;
      return depth + (1.0 - depth) * k;
    }
  }
  return 1.0;
}

}  // namespace

YuvSequence synth_sequence(uint32_t n_frames, uint32_t width, uint32_t height) {
  YuvSequence seq(width, height);
  size_t luma = seq.luma_samples();
  size_t cw = width / 2, ch = height / 2;
  for (uint32_t f = 0; f < n_frames; ++f) {
    double scale = luma_scale(f);
    YuvFrame frame;
    frame.y.resize(luma);
    for (uint32_t yy = 0; yy < height; ++yy) {
      uint8_t* row = frame.y.data() + size_t(yy) * width;
      for (uint32_t xx = 0; xx < width; ++xx) {
        uint32_t phase = (xx + yy / 2 + 2 * f) % width;
        double v = scale * (32.0 + 191.0 * phase / width);
        row[xx] = uint8_t(std::llround(v));
      }
    }
    frame.u.resize(cw * ch);
    frame.v.resize(cw * ch);
    for (uint32_t yy = 0; yy < ch; ++yy) {
      for (uint32_t xx = 0; xx < cw; ++xx) {
        frame.u[size_t(yy) * cw + xx] = uint8_t(64 + (128 * xx) / cw);
        frame.v[size_t(yy) * cw + xx] = uint8_t(64 + (128 * yy) / ch);
      }
    }
    seq.append_frame(std::move(frame));
  }
  return seq;
}

}  // namespace manetsim
