#include "sthoi/interaction.hpp"

#include <algorithm>
#include <map>

namespace sthoi {

std::optional<double> tracklet_miou(const SthoiTracklet& pred,
                                    const SthoiTracklet& gt, IouMode mode,
                                    Criterion criterion,
                                    const VerdictIndex& verdicts) {
  std::map<int, const SthoiFrame*> gt_at;
  for (const auto& f : gt.frames) gt_at[f.second] = &f;

  double sum = 0.0;
  int count = 0;
  for (const auto& f : pred.frames) {
    const bool tp = verdicts.is_tp(pred.track_id, f.second);
    if (!tp) {
      if (criterion == Criterion::Loose) continue;  // discarded
      ++count;                                      // strict: counts as 0
      continue;
    }
    const auto it = gt_at.find(f.second);
    double iou = 0.0;
    if (it != gt_at.end()) {
      iou = mode == IouMode::TwoD
                ? iou2d(f.human, it->second->human)
                : tube_iou3d(Tube{{f.human}}, Tube{{it->second->human}});
    }
    sum += iou;
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

bool is_true_positive(double miou, double tp_threshold) {
  return miou > tp_threshold;
}

double average_precision(std::vector<std::pair<double, bool>> predictions,
                         int num_gt) {
  if (num_gt < 0) throw invalid_input("average_precision: negative num_gt");
  if (num_gt == 0) return 0.0;
  std::stable_sort(predictions.begin(), predictions.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  double ap = 0.0;
  int tp = 0;
  for (std::size_t k = 0; k < predictions.size(); ++k) {
    if (predictions[k].second) {
      ++tp;
      ap += static_cast<double>(tp) / static_cast<double>(k + 1);
    }
  }
  return ap / num_gt;
}

double mean_ap(const std::vector<ClassAp>& per_class) {
  double sum = 0.0;
  int n = 0;
  for (const auto& c : per_class) {
    if (c.num_gt > 0) {
      sum += c.ap;
      ++n;
    }
  }
  if (n == 0) throw invalid_input("mean_ap: no class has GT tracklets");
  return sum / n;
}

std::vector<MatchedPrediction> match_predictions(
    const std::vector<SthoiTracklet>& preds,
    const std::vector<SthoiTracklet>& gts, IouMode mode, Criterion criterion,
    const VerdictIndex& verdicts, double tp_threshold) {
  std::vector<int> order(preds.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return tracklet_score(preds[a]) > tracklet_score(preds[b]);
  });

  std::vector<char> gt_taken(gts.size(), 0);
  std::vector<MatchedPrediction> out;
  out.reserve(preds.size());
  for (int pi : order) {
    MatchedPrediction mp;
    mp.pred_index = pi;
    mp.score = tracklet_score(preds[pi]);
    int best_gt = -1;
    std::optional<double> best;
    for (std::size_t gi = 0; gi < gts.size(); ++gi) {
      if (gt_taken[gi]) continue;
      if (gts[gi].interaction != preds[pi].interaction) continue;
      const auto miou =
          tracklet_miou(preds[pi], gts[gi], mode, criterion, verdicts);
      if (!miou) continue;
      if (!best || *miou > *best) {
        best = miou;
        best_gt = static_cast<int>(gi);
      }
    }
    mp.miou = best;
    if (best && is_true_positive(*best, tp_threshold)) {
      mp.tp = true;
      mp.gt_index = best_gt;
      gt_taken[best_gt] = 1;
    }
    out.push_back(mp);
  }
  return out;
}

}  // namespace sthoi
