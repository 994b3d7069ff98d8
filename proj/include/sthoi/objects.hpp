#pragma once

#include <optional>
#include <vector>

#include "sthoi/interaction.hpp"

namespace sthoi {

// SOT-style interacted-object scoring. The GT side of an ST-HOI tracklet may
// carry several aligned object tracklets (frame.objects[j] is tracklet j's
// box at that frame).

struct DiscoveryOptions {
  Criterion criterion = Criterion::Strict;
  IouMode mode = IouMode::TwoD;
  // Tracklet-level multi-GT max by default; per-frame max behind this flag.
  bool per_frame_max = false;
};

// mIoU of the predicted object boxes against the best GT object tracklet.
// Frames that are tracking-FP (per verdicts) or belong to an interaction-FP
// tracklet are zeroed (strict) or discarded (loose); interaction_fp marks the
// whole tracklet as downstream-FP. nullopt when loose filtering discards
// every frame. A missing predicted object box counts as IoU 0.
std::optional<double> discovery_miou(const SthoiTracklet& pred,
                                     const SthoiTracklet& gt,
                                     const DiscoveryOptions& opt,
                                     const VerdictIndex& verdicts,
                                     bool interaction_fp = false);

// Unweighted mean over included tracklet mIoUs; throws on an empty set.
double aggregate_discovery(const std::vector<double>& mious);

}  // namespace sthoi
