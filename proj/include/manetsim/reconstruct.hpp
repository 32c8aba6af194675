#pragma once

#include <vector>

#include "manetsim/logs.hpp"
#include "manetsim/video_trace.hpp"
#include "manetsim/yuv.hpp"

namespace manetsim {

enum class FrameStatus : uint8_t {
  DeliveredDecodable,    // all segments received, GOP dependency chain intact
  DeliveredUndecodable,  // all segments received but a predecessor is missing
  Lost,                  // at least one segment missing
};

enum class ConcealmentMode : uint8_t { RepeatLast, ZeroFill };

struct ReconstructedVideo {
  std::vector<FrameStatus> status;
  YuvSequence video;  // same frame count as the source
  ConcealmentMode mode = ConcealmentMode::RepeatLast;

  size_t decodable_count() const;
  double decodable_ratio() const;  // 0 for an empty video
};

// Rebuilds the received video. A frame is delivered iff every one of its
// segments appears in the receiver log; it is decodable iff delivered and,
// for P frames, the previous frame of the GOP is decodable. Decodable frames
// reproduce the source losslessly (the surrogate codec has no quantization);
// the rest are concealed.
ReconstructedVideo reconstruct(const VideoTrace& trace, const SenderLog& sender,
                               const ReceiverLog& receiver, const YuvSequence& source,
                               ConcealmentMode mode = ConcealmentMode::RepeatLast,
                               uint32_t gop_len = 30);

// Decodable flags only (no pixel output); used where the video is not needed.
std::vector<FrameStatus> frame_statuses(const VideoTrace& trace, const SenderLog& sender,
                                        const ReceiverLog& receiver, uint32_t gop_len = 30);

bool extractability(const ReconstructedVideo& recon, double theta);

}  // namespace manetsim
