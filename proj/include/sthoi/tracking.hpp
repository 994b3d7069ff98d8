#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sthoi/geometry.hpp"

namespace sthoi {

struct IdentifiedBox {
  std::int64_t track_id = 0;
  Box box;
};

enum class TrackVerdict { TruePositive, FalsePositive, Miss };

struct FrameVerdict {
  int second = 0;
  TrackVerdict tracking = TrackVerdict::FalsePositive;
  std::optional<std::int64_t> matched_gt;  // set iff TruePositive
};

struct SecondMatch {
  // index pairs into the gt/pred input vectors
  std::vector<std::pair<int, int>> matches;
  std::vector<int> unmatched_gt;
  std::vector<int> unmatched_pred;
};

// One-to-one matching maximizing total IoU among pairs with IoU > threshold.
// Inputs are sorted by track id internally, so ties resolve to the lowest
// gt id. Duplicate ids on either side are rejected.
SecondMatch match_second(const std::vector<IdentifiedBox>& gt,
                         const std::vector<IdentifiedBox>& pred,
                         double iou_threshold = 0.5);

// A human track sampled at one box per second (first frame of each second).
struct TrackFrame {
  int second = 0;
  Box box;
};

struct HumanTrack {
  std::int64_t id = 0;
  std::vector<TrackFrame> frames;  // seconds strictly increasing
};

struct VideoTracks {
  std::string video;
  std::vector<HumanTrack> tracks;
};

struct VideoTrackingResult {
  std::string video;
  int gt_boxes = 0;
  int pred_boxes = 0;
  int misses = 0;
  int false_positives = 0;
  int id_switches = 0;
  int idtp = 0;
  double mota = 0.0;
  double idf1 = 0.0;
  // gt identity -> pred identity under the video-level optimal assignment
  std::map<std::int64_t, std::int64_t> identity_map;
  // verdict per predicted (track id, second); Miss entries carry the gt id
  std::vector<std::pair<std::int64_t, FrameVerdict>> verdicts;
};

VideoTrackingResult evaluate_video_tracking(const VideoTracks& gt,
                                            const VideoTracks& pred,
                                            double iou_threshold = 0.5);

struct TrackingScore {
  double mota = 0.0;
  double idf1 = 0.0;
  std::vector<VideoTrackingResult> per_video;
  std::vector<std::string> zero_gt_videos;  // excluded from the means
};

// Mean of per-video MOTA/IDF1; videos without GT boxes are excluded and
// flagged.
TrackingScore aggregate_tracking(std::vector<VideoTrackingResult> results);

// Fast (track id, second) -> tracking-TP lookup for the downstream stages.
class VerdictIndex {
 public:
  VerdictIndex() = default;
  explicit VerdictIndex(const VideoTrackingResult& r);

  // Unknown frames count as false positives.
  bool is_tp(std::int64_t track_id, int second) const;

 private:
  std::unordered_map<std::int64_t, std::unordered_map<int, bool>> tp_;
};

}  // namespace sthoi
