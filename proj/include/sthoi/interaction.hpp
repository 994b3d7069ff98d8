#pragma once

#include <optional>
#include <vector>

#include "sthoi/tracking.hpp"
#include "sthoi/tracklets.hpp"

namespace sthoi {

enum class IouMode { TwoD, ThreeD };
enum class Criterion { Strict, Loose };

// Mean IoU between a predicted and a GT ST-HOI tracklet over the prediction's
// frames. Loose: only tracking-TP frames count; nullopt when none survive.
// Strict: tracking-FP frames contribute IoU 0. A pred frame with no GT frame
// at the same second contributes 0.
std::optional<double> tracklet_miou(const SthoiTracklet& pred,
                                    const SthoiTracklet& gt, IouMode mode,
                                    Criterion criterion,
                                    const VerdictIndex& verdicts);

// mIoU strictly above 0.2 ("higher than") makes a tracklet a true positive.
bool is_true_positive(double miou, double tp_threshold = 0.2);

// AP over one class: predictions as (score, tp) pairs, area under the exact
// precision-recall staircase. num_gt = 0 with predictions present gives 0.
double average_precision(std::vector<std::pair<double, bool>> predictions,
                         int num_gt);

struct ClassAp {
  int interaction = 0;
  double ap = 0.0;
  int num_gt = 0;
  int num_pred = 0;
};

// Mean over classes holding at least one GT tracklet; throws when none does.
double mean_ap(const std::vector<ClassAp>& per_class);

// Outcome of greedy prediction-to-GT matching for one evaluation cell.
struct MatchedPrediction {
  int pred_index = -1;       // index into the prediction list
  double score = 0.0;
  bool tp = false;
  int gt_index = -1;                // matched GT, -1 when FP
  std::optional<double> miou;       // nullopt: undefined under loose
};

// Greedy matching per class: predictions in descending score order claim the
// unmatched GT tracklet with the highest mIoU when that mIoU exceeds the TP
// threshold. Both lists must belong to one video and one interaction class.
std::vector<MatchedPrediction> match_predictions(
    const std::vector<SthoiTracklet>& preds,
    const std::vector<SthoiTracklet>& gts, IouMode mode, Criterion criterion,
    const VerdictIndex& verdicts, double tp_threshold = 0.2);

}  // namespace sthoi
