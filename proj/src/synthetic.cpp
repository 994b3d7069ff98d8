#include "sthoi/synthetic.hpp"

#include <random>

namespace sthoi {

SyntheticBenchmark gen_synthetic(const SyntheticSpec& spec) {
  if (spec.n_videos <= 0 || spec.n_seconds <= 0 ||
      spec.misses_per_video < 0 || spec.misses_per_video >= spec.n_seconds ||
      spec.fp_tracklets_per_video < 0) {
    throw invalid_input("gen_synthetic: invalid spec");
  }
  std::mt19937_64 rng(spec.seed);
  // Integer-valued coordinates keep the box arithmetic exact, so an oracle
  // prediction reproduces the closed-form metrics bit for bit.
  std::uniform_int_distribution<int> pos_i(50, 300);
  std::uniform_int_distribution<int> dim_i(40, 120);
  std::uniform_int_distribution<int> step_i(-5, 5);
  auto pos = [&](std::mt19937_64& g) { return (double)pos_i(g); };
  auto dim = [&](std::mt19937_64& g) { return (double)dim_i(g); };
  auto step = [&](std::mt19937_64& g) { return (double)step_i(g); };

  SyntheticBenchmark out;
  for (int v = 0; v < spec.n_videos; ++v) {
    const std::string video = "video_" + std::to_string(v);
    const int cls = v % kNumInteractions + 1;

    SthoiTracklet gt;
    gt.video = video;
    gt.track_id = 1;
    gt.interaction = cls;
    Box human{pos(rng), pos(rng), dim(rng), dim(rng)};
    Box object{pos(rng), pos(rng), dim(rng) / 2.0, dim(rng) / 2.0};
    for (int s = 0; s < spec.n_seconds; ++s) {
      gt.frames.push_back({s, human, 1.0, {object}});
      human.x += step(rng);
      human.y += step(rng);
      object.x += step(rng);
      object.y += step(rng);
    }
    out.gt.push_back(gt);

    SthoiTracklet pred = gt;
    pred.frames.erase(pred.frames.begin(),
                      pred.frames.begin() + spec.misses_per_video);
    out.pred.push_back(std::move(pred));

    for (int f = 0; f < spec.fp_tracklets_per_video; ++f) {
      SthoiTracklet fp;
      fp.video = video;
      fp.track_id = 1000 + f;
      fp.interaction = cls;
      Box far{5000.0 + pos(rng), 5000.0 + pos(rng), dim(rng), dim(rng)};
      for (int s = 0; s < spec.n_seconds; ++s) {
        fp.frames.push_back({s, far, 0.5, {far}});
        far.x += step(rng);
      }
      out.pred.push_back(std::move(fp));
    }
  }

  // Closed-form expected metrics for the planted pattern. Per video: m
  // missed GT seconds, f spurious tracklets of n all-FP frames, one true
  // tracklet whose surviving frames all match exactly.
  const double n = spec.n_seconds;
  const double m = spec.misses_per_video;
  const double f = spec.fp_tracklets_per_video;
  EvalReport& e = out.expected;
  e.mota = 1.0 - (m + f * n) / n;
  e.idf1 = 2.0 * (n - m) / (2.0 * (n - m) + m + f * n);
  e.interaction_map = {1.0, 1.0, 1.0, 1.0};
  const double strict_obj = 1.0 / (1.0 + f);
  e.object_miou = {strict_obj, strict_obj, 1.0, 1.0};
  e.object_loose_excluded_2d =
      spec.n_videos * spec.fp_tracklets_per_video;
  e.object_loose_excluded_3d = e.object_loose_excluded_2d;
  return out;
}

}  // namespace sthoi
