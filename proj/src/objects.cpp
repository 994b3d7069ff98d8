#include "sthoi/objects.hpp"

#include <algorithm>
#include <map>

namespace sthoi {
namespace {

double object_iou(const Box& pred, const Box& gt, IouMode mode) {
  return mode == IouMode::TwoD ? iou2d(pred, gt)
                               : tube_iou3d(Tube{{pred}}, Tube{{gt}});
}

}  // namespace

std::optional<double> discovery_miou(const SthoiTracklet& pred,
                                     const SthoiTracklet& gt,
                                     const DiscoveryOptions& opt,
                                     const VerdictIndex& verdicts,
                                     bool interaction_fp) {
  std::map<int, const SthoiFrame*> gt_at;
  std::size_t n_gt_tracklets = 0;
  for (const auto& f : gt.frames) {
    gt_at[f.second] = &f;
    n_gt_tracklets = std::max(n_gt_tracklets, f.objects.size());
  }

  struct Evaluated {
    const SthoiFrame* pred = nullptr;
    const SthoiFrame* gt = nullptr;  // null: no GT frame at this second
    bool good = false;               // survived the step-wise filter
  };
  std::vector<Evaluated> frames;
  for (const auto& f : pred.frames) {
    const bool good =
        !interaction_fp && verdicts.is_tp(pred.track_id, f.second);
    if (!good && opt.criterion == Criterion::Loose) continue;
    const auto it = gt_at.find(f.second);
    frames.push_back({&f, it == gt_at.end() ? nullptr : it->second, good});
  }
  if (frames.empty()) return std::nullopt;

  auto frame_iou = [&](const Evaluated& e, std::size_t j) -> double {
    if (!e.good || !e.gt || e.pred->objects.empty()) return 0.0;
    if (j >= e.gt->objects.size()) return 0.0;
    return object_iou(e.pred->objects.front(), e.gt->objects[j], opt.mode);
  };

  if (opt.per_frame_max) {
    double sum = 0.0;
    for (const auto& e : frames) {
      double best = 0.0;
      for (std::size_t j = 0; j < n_gt_tracklets; ++j)
        best = std::max(best, frame_iou(e, j));
      sum += best;
    }
    return sum / frames.size();
  }

  // Tracklet-level multi-GT max: mIoU against each GT object tracklet over
  // the whole evaluated span, keep the largest.
  double best = 0.0;
  for (std::size_t j = 0; j < std::max<std::size_t>(n_gt_tracklets, 1); ++j) {
    double sum = 0.0;
    for (const auto& e : frames) sum += frame_iou(e, j);
    best = std::max(best, sum / frames.size());
  }
  return best;
}

double aggregate_discovery(const std::vector<double>& mious) {
  if (mious.empty()) throw invalid_input("aggregate_discovery: empty set");
  double sum = 0.0;
  for (double v : mious) sum += v;
  return sum / mious.size();
}

}  // namespace sthoi
