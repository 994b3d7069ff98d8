#pragma once

#include <cstdint>

#include "sthoi/evaluate.hpp"

namespace sthoi {

// Deterministic benchmark generator with closed-form expected metrics for
// the planted error pattern.
struct SyntheticSpec {
  std::uint64_t seed = 1;
  int n_videos = 1;
  int n_seconds = 10;
  // Planted errors: misses drop the first seconds of each video's
  // prediction; fp_tracklets add far-away spurious tracklets per video.
  int misses_per_video = 0;
  int fp_tracklets_per_video = 0;
};

struct SyntheticBenchmark {
  std::vector<SthoiTracklet> gt;
  std::vector<SthoiTracklet> pred;
  EvalReport expected;  // summary cells only (per-video/per-class left empty)
};

SyntheticBenchmark gen_synthetic(const SyntheticSpec& spec);

}  // namespace sthoi
