#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sthoi/geometry.hpp"

namespace sthoi {

inline constexpr int kNumInteractions = 51;

struct EvalConfig {
  double alpha = 0.0;          // interaction score mask threshold
  double tp_miou = 0.2;        // tracklet TP threshold
  double tracking_iou = 0.5;   // per-frame box match threshold
  int jobs = 1;
};

// One second of a scored human tracklet: box plus 51 interaction scores.
struct ScoredSecond {
  int second = 0;
  Box human;
  std::array<double, kNumInteractions> scores{};
};

struct ScoredHumanTracklet {
  std::string video;
  std::int64_t track_id = 0;
  std::vector<ScoredSecond> seconds;  // strictly increasing
};

// One frame of an ST-HOI tracklet. GT frames carry >= 1 object box;
// predictions carry at most one plus a score.
struct SthoiFrame {
  int second = 0;
  Box human;
  double score = 0.0;
  std::vector<Box> objects;
};

struct SthoiTracklet {
  std::string video;
  std::int64_t track_id = 0;
  int interaction = 0;  // 1..51
  std::vector<SthoiFrame> frames;  // contiguous seconds
};

// Masks scores strictly below alpha and splits each interaction class into
// maximal runs of contiguous surviving seconds. All-masked tracklets vanish.
std::vector<SthoiTracklet> mask_and_split(const ScoredHumanTracklet& t,
                                          double alpha);

// Same masking applied to an already-formed ST-HOI tracklet (per-frame
// scores); used when predictions arrive in tracklet form.
std::vector<SthoiTracklet> split_by_alpha(const SthoiTracklet& t, double alpha);

// Mean per-second score of the tracklet.
double tracklet_score(const SthoiTracklet& t);

}  // namespace sthoi
