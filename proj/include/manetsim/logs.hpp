#pragma once

#include <string>
#include <vector>

#include "manetsim/engine.hpp"

namespace manetsim {

struct SegmentRecord {
  SimTime t = 0.0;
  uint64_t packet_uid = 0;
  uint32_t frame_id = 0;
  uint32_t segment_index = 0;
};

// Per-segment timestamp log, for both the sender and receiver sides.
struct SegmentLog {
  std::vector<SegmentRecord> records;

  void append(SimTime t, uint64_t uid, uint32_t frame_id, uint32_t segment_index) {
    records.push_back(SegmentRecord{t, uid, frame_id, segment_index});
  }

  // One line per segment: <time 9dec> <packet_uid> <frame_id> <segment_index>
  void save(const std::string& path) const;
  static SegmentLog load(const std::string& path);
  std::string to_text() const;
};

using SenderLog = SegmentLog;
using ReceiverLog = SegmentLog;

}  // namespace manetsim
