#include "manetsim/video_trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "manetsim/pixel_kernels.hpp"

namespace manetsim {

uint64_t VideoTrace::total_bytes() const {
  uint64_t sum = 0;
  for (const TraceEntry& e : entries) sum += e.size_bytes;
  return sum;
}

void VideoTrace::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot create " + path);
  for (const TraceEntry& e : entries) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%u %c %u %u %.6f\n", e.frame_id,
                  e.type == FrameType::I ? 'I' : 'P', e.size_bytes, e.n_segments,
                  e.gen_time);
    out << buf;
  }
  if (!out) throw IoError("write failure on " + path);
}

VideoTrace VideoTrace::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  VideoTrace trace;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    TraceEntry e;
    char type = 0;
    if (!(ls >> e.frame_id >> type >> e.size_bytes >> e.n_segments >> e.gen_time) ||
        (type != 'I' && type != 'P')) {
      throw IoError("bad trace line: " + line);
    }
    e.type = type == 'I' ? FrameType::I : FrameType::P;
    trace.entries.push_back(e);
  }
  return trace;
}

double spatial_activity(const YuvFrame& frame) {
  size_t n = frame.y.size();
  if (n == 0) return 0.0;
  const PixelKernels& k = pixel_kernels();
  uint64_t sum = k.sum_u8(frame.y.data(), n);
  // sum |n*y - sum| == n^2 * mean|y - mean|, computed exactly in integers
  uint64_t dev = k.scaled_absdev_u8(frame.y.data(), n, uint32_t(n), uint32_t(sum));
  return double(dev) / (double(n) * double(n));
}

double temporal_diff(const YuvFrame& cur, const YuvFrame& prev) {
  size_t n = cur.y.size();
  if (n == 0 || prev.y.size() != n) return 0.0;
  return double(pixel_kernels().sad_u8(cur.y.data(), prev.y.data(), n)) / double(n);
}

VideoTrace generate_trace(const YuvSequence& seq, const TraceParams& p, size_t max_frames) {
  VideoTrace trace;
  size_t n = std::min(seq.frame_count(), max_frames);
  trace.entries.reserve(n);
  for (size_t f = 0; f < n; ++f) {
    TraceEntry e;
    e.frame_id = uint32_t(f);
    e.type = (f % p.gop_len == 0) ? FrameType::I : FrameType::P;
    double raw;
    if (e.type == FrameType::I) {
      raw = p.base_i + p.alpha * spatial_activity(seq.frame(f));
    } else {
      raw = p.base_p + p.beta * temporal_diff(seq.frame(f), seq.frame(f - 1));
    }
    e.size_bytes = uint32_t(
        std::clamp<int64_t>(std::llround(raw), p.size_min, p.size_max));
    e.n_segments = (e.size_bytes + p.mtu - 1) / p.mtu;
    e.gen_time = double(f) / p.fps;
    trace.entries.push_back(e);
  }
  return trace;
}

}  // namespace manetsim
