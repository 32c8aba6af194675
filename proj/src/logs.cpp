#include "manetsim/logs.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "manetsim/errors.hpp"

namespace manetsim {

std::string SegmentLog::to_text() const {
  std::string out;
  char buf[96];
  for (const SegmentRecord& r : records) {
    std::snprintf(buf, sizeof(buf), "%.9f %llu %u %u\n", r.t,
                  static_cast<unsigned long long>(r.packet_uid), r.frame_id,
                  r.segment_index);
    out += buf;
  }
  return out;
}

void SegmentLog::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot create " + path);
  out << to_text();
  if (!out) throw IoError("write failure on " + path);
}

SegmentLog SegmentLog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  SegmentLog log;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    SegmentRecord r;
    if (!(ls >> r.t >> r.packet_uid >> r.frame_id >> r.segment_index)) {
      throw IoError("bad log line: " + line);
    }
    log.records.push_back(r);
  }
  return log;
}

}  // namespace manetsim
