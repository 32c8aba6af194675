#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "manetsim/metrics.hpp"
#include "manetsim/reconstruct.hpp"
#include "manetsim/rng.hpp"

using namespace manetsim;

namespace {

struct Fixture {
  YuvSequence source;
  VideoTrace trace;
  SenderLog sender;
  ReceiverLog all_received;

  Fixture(size_t frames, uint32_t gop_len = 30) : source(synth_sequence(uint32_t(frames), 32, 32)) {
    TraceParams p;
    p.gop_len = gop_len;
    trace = generate_trace(source, p);
    uint64_t uid = 0;
    for (const TraceEntry& e : trace.entries) {
      for (uint32_t s = 0; s < e.n_segments; ++s) {
        sender.append(e.gen_time, ++uid, e.frame_id, s);
        all_received.append(e.gen_time + 0.01, uid, e.frame_id, s);
      }
    }
  }

  ReceiverLog without(std::vector<std::pair<uint32_t, uint32_t>> missing) const {
    ReceiverLog log;
    for (const SegmentRecord& r : all_received.records) {
      bool drop = std::find(missing.begin(), missing.end(),
                            std::make_pair(r.frame_id, r.segment_index)) != missing.end();
      if (!drop) log.records.push_back(r);
    }
    return log;
  }
};

size_t decodable_count(const std::vector<FrameStatus>& st) {
  return size_t(std::count(st.begin(), st.end(), FrameStatus::DeliveredDecodable));
}

}  // namespace

TEST_CASE("a complete receiver log reproduces the source exactly") {
  Fixture fx(12);
  ReconstructedVideo rv = reconstruct(fx.trace, fx.sender, fx.all_received, fx.source);
  REQUIRE(rv.video.frame_count() == 12);
  CHECK(rv.decodable_count() == 12);
  for (size_t f = 0; f < 12; ++f) {
    CHECK(rv.status[f] == FrameStatus::DeliveredDecodable);
    CHECK(rv.video.frame(f).y == fx.source.frame(f).y);
  }
  // PSNR is then the cap everywhere.
  for (double v : psnr_sequence(fx.source, rv.video)) CHECK(v == 100.0);
}

TEST_CASE("losing a GOP's I frame makes the whole GOP undecodable") {
  Fixture fx(12, 4);  // GOPs: [0..3], [4..7], [8..11]
  ReceiverLog log = fx.without({{4, 0}});  // first segment of the I frame of GOP 2
  auto st = frame_statuses(fx.trace, fx.sender, log, 4);
  CHECK(st[4] == FrameStatus::Lost);
  for (size_t f = 5; f <= 7; ++f) CHECK(st[f] == FrameStatus::DeliveredUndecodable);
  for (size_t f = 0; f <= 3; ++f) CHECK(st[f] == FrameStatus::DeliveredDecodable);
  for (size_t f = 8; f <= 11; ++f) CHECK(st[f] == FrameStatus::DeliveredDecodable);
}

TEST_CASE("one lost segment of frame 5 conceals frames 5..9 of a 10-frame gop-30 trace") {
  Fixture fx(10, 30);
  REQUIRE(fx.trace.entries[5].type == FrameType::P);
  ReceiverLog log = fx.without({{5, 0}});
  ReconstructedVideo rv = reconstruct(fx.trace, fx.sender, log, fx.source, ConcealmentMode::RepeatLast, 30);
  for (size_t f = 0; f <= 4; ++f) {
    CHECK(rv.status[f] == FrameStatus::DeliveredDecodable);
    CHECK(rv.video.frame(f).y == fx.source.frame(f).y);
  }
  CHECK(rv.status[5] == FrameStatus::Lost);
  for (size_t f = 6; f <= 9; ++f) {
    CHECK(rv.status[f] == FrameStatus::DeliveredUndecodable);
    // repeat-last: the most recent decodable frame (4) fills in
    CHECK(rv.video.frame(f).y == fx.source.frame(4).y);
  }
}

TEST_CASE("concealment modes fill differently before any decodable frame") {
  Fixture fx(4, 30);
  ReceiverLog log = fx.without({{0, 0}});  // kill the only I frame
  ReconstructedVideo repeat = reconstruct(fx.trace, fx.sender, log, fx.source,
                                          ConcealmentMode::RepeatLast, 30);
  ReconstructedVideo zero = reconstruct(fx.trace, fx.sender, log, fx.source,
                                        ConcealmentMode::ZeroFill, 30);
  CHECK(repeat.decodable_count() == 0);
  // With no decodable frame yet, repeat-last degenerates to black frames.
  for (size_t f = 0; f < 4; ++f) {
    CHECK(std::all_of(repeat.video.frame(f).y.begin(), repeat.video.frame(f).y.end(),
                      [](uint8_t v) { return v == 0; }));
    CHECK(std::all_of(zero.video.frame(f).y.begin(), zero.video.frame(f).y.end(),
                      [](uint8_t v) { return v == 0; }));
  }
}

TEST_CASE("zero-fill conceals even when a decodable frame exists") {
  Fixture fx(6, 30);
  ReceiverLog log = fx.without({{3, 0}});
  ReconstructedVideo zero = reconstruct(fx.trace, fx.sender, log, fx.source,
                                        ConcealmentMode::ZeroFill, 30);
  CHECK(zero.status[3] == FrameStatus::Lost);
  CHECK(std::all_of(zero.video.frame(3).y.begin(), zero.video.frame(3).y.end(),
                    [](uint8_t v) { return v == 0; }));
}

TEST_CASE("logs referencing unknown segments are rejected") {
  Fixture fx(3);
  ReceiverLog bogus = fx.all_received;
  bogus.append(1.0, 999, 2, 500);  // segment index beyond the trace
  CHECK_THROWS_AS(frame_statuses(fx.trace, fx.sender, bogus), InconsistentLogs);
  ReceiverLog bogus2 = fx.all_received;
  bogus2.append(1.0, 999, 77, 0);  // frame beyond the trace
  CHECK_THROWS_AS(frame_statuses(fx.trace, fx.sender, bogus2), InconsistentLogs);
}

TEST_CASE("duplicate receiver records do not double-count segments") {
  Fixture fx(3);
  ReceiverLog dup = fx.all_received;
  dup.records.push_back(dup.records.front());
  auto st = frame_statuses(fx.trace, fx.sender, dup);
  CHECK(decodable_count(st) == 3);
}

TEST_CASE("removing received segments never increases the decodable count") {
  Fixture fx(20, 5);
  RngStream rng(404);
  for (int trial = 0; trial < 30; ++trial) {
    // Random subset of the complete log, then remove one more element.
    ReceiverLog subset;
    for (const SegmentRecord& r : fx.all_received.records) {
      if (rng.uniform_int(4) != 0) subset.records.push_back(r);
    }
    size_t before = decodable_count(frame_statuses(fx.trace, fx.sender, subset, 5));
    if (subset.records.empty()) continue;
    size_t victim = rng.uniform_int(uint32_t(subset.records.size()));
    ReceiverLog smaller = subset;
    smaller.records.erase(smaller.records.begin() + ptrdiff_t(victim));
    size_t after = decodable_count(frame_statuses(fx.trace, fx.sender, smaller, 5));
    CHECK(after <= before);
  }
}

TEST_CASE("extractability threshold is inclusive") {
  Fixture fx(20, 1);  // every frame its own GOP: decodable == delivered
  // keep exactly one frame: ratio 0.05
  ReceiverLog one;
  for (const SegmentRecord& r : fx.all_received.records) {
    if (r.frame_id == 0) one.records.push_back(r);
  }
  ReconstructedVideo rv = reconstruct(fx.trace, fx.sender, one, fx.source,
                                      ConcealmentMode::RepeatLast, 1);
  CHECK(rv.decodable_ratio() == doctest::Approx(0.05));
  CHECK(extractability(rv, 0.05));       // boundary: ratio == theta
  CHECK_FALSE(extractability(rv, 0.051));
}

TEST_CASE("full decodable and zero decodable verdicts") {
  Fixture fx(10, 5);
  ReconstructedVideo all = reconstruct(fx.trace, fx.sender, fx.all_received, fx.source);
  CHECK(extractability(all, 1.0));
  ReceiverLog none;
  ReconstructedVideo empty = reconstruct(fx.trace, fx.sender, none, fx.source);
  CHECK(empty.decodable_count() == 0);
  CHECK_FALSE(extractability(empty, 0.05));
}
