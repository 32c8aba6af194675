#include "manetsim/reconstruct.hpp"

#include <algorithm>

namespace manetsim {

size_t ReconstructedVideo::decodable_count() const {
  return size_t(std::count(status.begin(), status.end(), FrameStatus::DeliveredDecodable));
}

double ReconstructedVideo::decodable_ratio() const {
  return status.empty() ? 0.0 : double(decodable_count()) / double(status.size());
}

namespace {

void check_log_against_trace(const SegmentLog& log, const VideoTrace& trace,
                             const char* which) {
  for (const SegmentRecord& r : log.records) {
    if (r.frame_id >= trace.entries.size() ||
        r.segment_index >= trace.entries[r.frame_id].n_segments) {
      throw InconsistentLogs(std::string(which) + " log references segment (" +
                             std::to_string(r.frame_id) + "," +
                             std::to_string(r.segment_index) + ") not in trace");
    }
  }
}

}  // namespace

std::vector<FrameStatus> frame_statuses(const VideoTrace& trace, const SenderLog& sender,
                                        const ReceiverLog& receiver, uint32_t gop_len) {
  check_log_against_trace(sender, trace, "sender");
  check_log_against_trace(receiver, trace, "receiver");

  size_t n = trace.entries.size();
  std::vector<uint32_t> received_segments(n, 0);
  std::vector<std::vector<bool>> seen(n);
  for (size_t f = 0; f < n; ++f) seen[f].assign(trace.entries[f].n_segments, false);
  for (const SegmentRecord& r : receiver.records) {
    if (!seen[r.frame_id][r.segment_index]) {
      seen[r.frame_id][r.segment_index] = true;
      received_segments[r.frame_id]++;
    }
  }

  std::vector<FrameStatus> status(n, FrameStatus::Lost);
  bool chain_ok = false;
  for (size_t f = 0; f < n; ++f) {
    bool delivered = received_segments[f] == trace.entries[f].n_segments;
    bool is_i = (f % gop_len == 0);
    if (is_i) chain_ok = delivered;
    else chain_ok = chain_ok && delivered;
    if (!delivered) {
      status[f] = FrameStatus::Lost;
    } else {
      status[f] = chain_ok ? FrameStatus::DeliveredDecodable
                           : FrameStatus::DeliveredUndecodable;
    }
  }
  return status;
}

ReconstructedVideo reconstruct(const VideoTrace& trace, const SenderLog& sender,
                               const ReceiverLog& receiver, const YuvSequence& source,
                               ConcealmentMode mode, uint32_t gop_len) {
  if (source.frame_count() < trace.entries.size()) {
    throw InconsistentLogs("source has fewer frames than the trace");
  }

  ReconstructedVideo out;
  out.mode = mode;
  out.status = frame_statuses(trace, sender, receiver, gop_len);
  out.video = YuvSequence(source.width(), source.height());

  size_t luma = source.luma_samples();
  size_t chroma = luma / 4;
  YuvFrame black;
  black.y.assign(luma, 0);
  black.u.assign(chroma, 0);
  black.v.assign(chroma, 0);

  ptrdiff_t last_decodable = -1;
  for (size_t f = 0; f < out.status.size(); ++f) {
    if (out.status[f] == FrameStatus::DeliveredDecodable) {
      out.video.append_frame(source.frame(f));
      last_decodable = ptrdiff_t(f);
    } else if (mode == ConcealmentMode::RepeatLast && last_decodable >= 0) {
      out.video.append_frame(source.frame(size_t(last_decodable)));
    } else {
      out.video.append_frame(black);
    }
  }
  return out;
}

bool extractability(const ReconstructedVideo& recon, double theta) {
  return recon.decodable_ratio() >= theta;
}

}  // namespace manetsim
