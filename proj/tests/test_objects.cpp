#include <doctest.h>

#include "sthoi/objects.hpp"

using namespace sthoi;

namespace {

// Pred tracklet whose object box at each frame is given explicitly.
SthoiTracklet pred_with_objects(const std::vector<Box>& objects) {
  SthoiTracklet t;
  t.video = "v";
  t.track_id = 1;
  t.interaction = 1;
  for (int s = 0; s < (int)objects.size(); ++s) {
    t.frames.push_back({s, {0, 0, 10, 10}, 1.0, {objects[s]}});
  }
  return t;
}

SthoiTracklet gt_with_objects(const std::vector<std::vector<Box>>& per_frame) {
  SthoiTracklet t;
  t.video = "v";
  t.track_id = 2;
  t.interaction = 1;
  for (int s = 0; s < (int)per_frame.size(); ++s) {
    t.frames.push_back({s, {0, 0, 10, 10}, 1.0, per_frame[s]});
  }
  return t;
}

VerdictIndex verdicts(std::int64_t track_id, const std::vector<bool>& tp) {
  VideoTrackingResult r;
  for (int s = 0; s < (int)tp.size(); ++s) {
    r.verdicts.push_back(
        {track_id,
         {s, tp[s] ? TrackVerdict::TruePositive : TrackVerdict::FalsePositive,
          std::nullopt}});
  }
  return VerdictIndex(r);
}

const Box kIou08{0, 0, 10, 12.5};             // vs 10x10: 100/125 = 0.8
const Box kIou04{0, 0, 10, 25};               // 100/250 = 0.4
const Box kGt{0, 0, 10, 10};

}  // namespace

TEST_CASE("upstream-FP frames: loose keeps only good frames, strict zeroes") {
  const auto pred = pred_with_objects({kIou08, kIou08});
  const auto gt = gt_with_objects({{kGt}, {kGt}});
  const auto idx = verdicts(1, {true, false});
  DiscoveryOptions strict{Criterion::Strict, IouMode::TwoD, false};
  DiscoveryOptions loose{Criterion::Loose, IouMode::TwoD, false};
  CHECK(*discovery_miou(pred, gt, strict, idx) == doctest::Approx(0.4));
  CHECK(*discovery_miou(pred, gt, loose, idx) == doctest::Approx(0.8));
}

TEST_CASE("an interaction-FP tracklet is all-bad downstream") {
  const auto pred = pred_with_objects({kIou08});
  const auto gt = gt_with_objects({{kGt}});
  const auto idx = verdicts(1, {true});
  DiscoveryOptions strict{Criterion::Strict, IouMode::TwoD, false};
  DiscoveryOptions loose{Criterion::Loose, IouMode::TwoD, false};
  CHECK(*discovery_miou(pred, gt, strict, idx, true) == 0.0);
  CHECK(!discovery_miou(pred, gt, loose, idx, true));
}

TEST_CASE("multiple GT object tracklets: best tracklet-level mean wins") {
  const auto pred = pred_with_objects({kGt, kGt});
  // GT tracklet 0 matches frame 0 only; tracklet 1 matches frame 1 only.
  const Box far{500, 500, 10, 10};
  const auto gt = gt_with_objects({{kGt, far}, {far, kGt}});
  const auto idx = verdicts(1, {true, true});
  DiscoveryOptions tracklet_level{Criterion::Strict, IouMode::TwoD, false};
  DiscoveryOptions frame_level{Criterion::Strict, IouMode::TwoD, true};
  // Each GT tracklet averages (1 + 0)/2; the per-frame max recovers 1.0.
  CHECK(*discovery_miou(pred, gt, tracklet_level, idx) == doctest::Approx(0.5));
  CHECK(*discovery_miou(pred, gt, frame_level, idx) == doctest::Approx(1.0));
}

TEST_CASE("a frame without a predicted object box scores IoU 0") {
  SthoiTracklet pred = pred_with_objects({kGt});
  pred.frames.push_back({1, {0, 0, 10, 10}, 1.0, {}});
  const auto gt = gt_with_objects({{kGt}, {kGt}});
  const auto idx = verdicts(1, {true, true});
  DiscoveryOptions opt{Criterion::Strict, IouMode::TwoD, false};
  CHECK(*discovery_miou(pred, gt, opt, idx) == doctest::Approx(0.5));
}

TEST_CASE("aggregate_discovery is the unweighted mean") {
  CHECK(aggregate_discovery({1.0}) == doctest::Approx(1.0));
  CHECK(aggregate_discovery({0.2, 0.6}) == doctest::Approx(0.4));
  CHECK_THROWS_AS(aggregate_discovery({}), invalid_input);
}
