#pragma once

#include <string>
#include <vector>

#include "sthoi/interaction.hpp"
#include "sthoi/objects.hpp"
#include "sthoi/tracking.hpp"
#include "sthoi/tracklets.hpp"

namespace sthoi {

class id_mismatch : public std::runtime_error {
 public:
  explicit id_mismatch(const std::string& what) : std::runtime_error(what) {}
};

// One value per (criterion, mode) cell, mirroring the benchmark table layout.
struct MetricCells {
  double strict_2d = 0.0;
  double strict_3d = 0.0;
  double loose_2d = 0.0;
  double loose_3d = 0.0;

  bool operator==(const MetricCells&) const = default;
};

struct VideoTrackingSummary {
  std::string video;
  double mota = 0.0;
  double idf1 = 0.0;
  int gt_boxes = 0;

  bool operator==(const VideoTrackingSummary&) const = default;
};

struct ClassApCells {
  int interaction = 0;
  int num_gt = 0;
  MetricCells ap;

  bool operator==(const ClassApCells&) const = default;
};

struct EvalReport {
  double mota = 0.0;
  double idf1 = 0.0;
  MetricCells interaction_map;
  MetricCells object_miou;
  std::vector<VideoTrackingSummary> per_video;
  std::vector<ClassApCells> per_class;
  std::vector<std::string> zero_gt_videos;
  // Tracklets dropped from the loose object aggregation (all frames
  // discarded), per cell, 2D then 3D.
  int object_loose_excluded_2d = 0;
  int object_loose_excluded_3d = 0;

  bool operator==(const EvalReport&) const = default;
};

// Full step-wise pipeline: tracking -> alpha mask/split -> interaction
// matching -> object discovery, all four cells. Deterministic for any job
// count; throws invalid_input on empty GT and id_mismatch when predictions
// reference unknown videos.
EvalReport eval_all(const std::vector<SthoiTracklet>& gt,
                    const std::vector<SthoiTracklet>& pred,
                    const EvalConfig& config);

std::string report_to_json(const EvalReport& r);
EvalReport report_from_json(const std::string& text);
// Human-readable table, 4-decimal percentages.
std::string report_table(const EvalReport& r);

}  // namespace sthoi
