#include "sthoi/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace sthoi {
namespace {

struct Cell {
  Criterion criterion;
  IouMode mode;
};

constexpr Cell kCells[4] = {{Criterion::Strict, IouMode::TwoD},
                            {Criterion::Strict, IouMode::ThreeD},
                            {Criterion::Loose, IouMode::TwoD},
                            {Criterion::Loose, IouMode::ThreeD}};

double& cell_ref(MetricCells& c, int idx) {
  switch (idx) {
    case 0: return c.strict_2d;
    case 1: return c.strict_3d;
    case 2: return c.loose_2d;
    default: return c.loose_3d;
  }
}

double cell_val(const MetricCells& c, int idx) {
  switch (idx) {
    case 0: return c.strict_2d;
    case 1: return c.strict_3d;
    case 2: return c.loose_2d;
    default: return c.loose_3d;
  }
}

// Everything one video contributes before the cross-video merge.
struct VideoResult {
  VideoTrackingResult tracking;
  // per cell, per class: (score, tp) entries in descending score order
  std::map<int, std::vector<std::pair<double, bool>>> ap_entries[4];
  std::map<int, int> gt_count;  // class -> GT tracklets (cell independent)
  std::vector<double> object_mious_strict[4];  // indexed by cell; loose cells
  std::vector<double> object_mious_loose[4];   // kept separate for clarity
  int loose_excluded[4] = {0, 0, 0, 0};
};

VideoTracks tracks_from_tracklets(const std::string& video,
                                  const std::vector<const SthoiTracklet*>& ts) {
  VideoTracks out;
  out.video = video;
  std::map<std::int64_t, std::map<int, Box>> merged;
  for (const auto* t : ts) {
    auto& frames = merged[t->track_id];
    for (const auto& f : t->frames) frames.emplace(f.second, f.human);
  }
  for (const auto& [id, frames] : merged) {
    HumanTrack track;
    track.id = id;
    for (const auto& [s, b] : frames) track.frames.push_back({s, b});
    out.tracks.push_back(std::move(track));
  }
  return out;
}

VideoResult evaluate_video(const std::string& video,
                           const std::vector<const SthoiTracklet*>& gt,
                           const std::vector<const SthoiTracklet*>& pred,
                           const EvalConfig& cfg) {
  VideoResult res;
  const VideoTracks gt_tracks = tracks_from_tracklets(video, gt);
  const VideoTracks pred_tracks = tracks_from_tracklets(video, pred);
  res.tracking =
      evaluate_video_tracking(gt_tracks, pred_tracks, cfg.tracking_iou);
  const VerdictIndex verdicts(res.tracking);

  // Alpha masking splits predictions into per-interaction runs.
  std::vector<SthoiTracklet> split_preds;
  for (const auto* t : pred) {
    auto parts = split_by_alpha(*t, cfg.alpha);
    split_preds.insert(split_preds.end(),
                       std::make_move_iterator(parts.begin()),
                       std::make_move_iterator(parts.end()));
  }

  std::map<int, std::vector<SthoiTracklet>> preds_by_class;
  std::map<int, std::vector<SthoiTracklet>> gts_by_class;
  for (auto& t : split_preds) preds_by_class[t.interaction].push_back(t);
  for (const auto* t : gt) {
    gts_by_class[t->interaction].push_back(*t);
    ++res.gt_count[t->interaction];
  }

  std::set<int> classes;
  for (const auto& [c, v] : preds_by_class) classes.insert(c);
  for (const auto& [c, v] : gts_by_class) classes.insert(c);

  for (int ci = 0; ci < 4; ++ci) {
    const Cell cell = kCells[ci];
    for (int cls : classes) {
      static const std::vector<SthoiTracklet> kNone;
      const auto pit = preds_by_class.find(cls);
      const auto git = gts_by_class.find(cls);
      const auto& cls_preds = pit == preds_by_class.end() ? kNone : pit->second;
      const auto& cls_gts = git == gts_by_class.end() ? kNone : git->second;
      const auto matched =
          match_predictions(cls_preds, cls_gts, cell.mode, cell.criterion,
                            verdicts, cfg.tp_miou);
      auto& entries = res.ap_entries[ci][cls];
      for (const auto& m : matched) {
        entries.emplace_back(m.score, m.tp);

        // Step-wise object discovery for this prediction.
        DiscoveryOptions opt;
        opt.criterion = cell.criterion;
        opt.mode = cell.mode;
        if (m.tp) {
          const auto miou = discovery_miou(cls_preds[m.pred_index],
                                           cls_gts[m.gt_index], opt, verdicts,
                                           /*interaction_fp=*/false);
          if (cell.criterion == Criterion::Strict) {
            res.object_mious_strict[ci].push_back(miou.value_or(0.0));
          } else if (miou) {
            res.object_mious_loose[ci].push_back(*miou);
          } else {
            ++res.loose_excluded[ci];
          }
        } else {
          // Interaction-FP tracklet: zeros under strict, discarded under
          // loose.
          if (cell.criterion == Criterion::Strict) {
            res.object_mious_strict[ci].push_back(0.0);
          } else {
            ++res.loose_excluded[ci];
          }
        }
      }
    }
  }
  return res;
}

nlohmann::json cells_json(const MetricCells& c) {
  return {{"strict_2d", c.strict_2d},
          {"strict_3d", c.strict_3d},
          {"loose_2d", c.loose_2d},
          {"loose_3d", c.loose_3d}};
}

MetricCells cells_from_json(const nlohmann::json& j) {
  MetricCells c;
  c.strict_2d = j.at("strict_2d").get<double>();
  c.strict_3d = j.at("strict_3d").get<double>();
  c.loose_2d = j.at("loose_2d").get<double>();
  c.loose_3d = j.at("loose_3d").get<double>();
  return c;
}

}  // namespace

EvalReport eval_all(const std::vector<SthoiTracklet>& gt,
                    const std::vector<SthoiTracklet>& pred,
                    const EvalConfig& cfg) {
  if (gt.empty()) throw invalid_input("eval_all: empty ground truth");

  std::map<std::string, std::vector<const SthoiTracklet*>> gt_by_video;
  std::map<std::string, std::vector<const SthoiTracklet*>> pred_by_video;
  for (const auto& t : gt) gt_by_video[t.video].push_back(&t);
  for (const auto& t : pred) {
    if (!gt_by_video.contains(t.video)) {
      throw id_mismatch("prediction references unknown video: " + t.video);
    }
    pred_by_video[t.video].push_back(&t);
  }

  std::vector<std::string> videos;
  for (const auto& [v, ts] : gt_by_video) videos.push_back(v);

  // Parallel per-video evaluation; the merge below walks videos in sorted
  // order, so results do not depend on the job count.
  std::vector<VideoResult> results(videos.size());
  const int jobs = std::max(1, cfg.jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= videos.size()) return;
      try {
        static const std::vector<const SthoiTracklet*> kNone;
        const auto pit = pred_by_video.find(videos[i]);
        results[i] = evaluate_video(
            videos[i], gt_by_video[videos[i]],
            pit == pred_by_video.end() ? kNone : pit->second, cfg);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  EvalReport report;

  // Tracking means over videos with GT boxes.
  std::vector<VideoTrackingResult> tracking;
  tracking.reserve(results.size());
  for (auto& r : results) tracking.push_back(r.tracking);
  TrackingScore score = aggregate_tracking(std::move(tracking));
  report.mota = score.mota;
  report.idf1 = score.idf1;
  report.zero_gt_videos = score.zero_gt_videos;
  for (const auto& v : score.per_video) {
    report.per_video.push_back({v.video, v.mota, v.idf1, v.gt_boxes});
  }

  // Pool AP entries and object mIoUs per class across videos.
  for (int ci = 0; ci < 4; ++ci) {
    std::map<int, std::vector<std::pair<double, bool>>> entries;
    std::map<int, int> gt_count;
    std::vector<double> object_mious;
    int excluded = 0;
    for (const auto& r : results) {
      for (const auto& [cls, e] : r.ap_entries[ci]) {
        auto& dst = entries[cls];
        dst.insert(dst.end(), e.begin(), e.end());
      }
      for (const auto& [cls, n] : r.gt_count) gt_count[cls] += n;
      const auto& mious = kCells[ci].criterion == Criterion::Strict
                              ? r.object_mious_strict[ci]
                              : r.object_mious_loose[ci];
      object_mious.insert(object_mious.end(), mious.begin(), mious.end());
      excluded += r.loose_excluded[ci];
    }

    std::vector<ClassAp> per_class;
    for (const auto& [cls, n] : gt_count) {
      ClassAp ap;
      ap.interaction = cls;
      ap.num_gt = n;
      const auto it = entries.find(cls);
      ap.num_pred = it == entries.end() ? 0 : static_cast<int>(it->second.size());
      ap.ap = average_precision(it == entries.end()
                                    ? std::vector<std::pair<double, bool>>{}
                                    : it->second,
                                n);
      per_class.push_back(ap);
    }
    cell_ref(report.interaction_map, ci) = mean_ap(per_class);
    cell_ref(report.object_miou, ci) =
        object_mious.empty() ? 0.0
                             : aggregate_discovery(object_mious);
    if (kCells[ci].criterion == Criterion::Loose) {
      (kCells[ci].mode == IouMode::TwoD ? report.object_loose_excluded_2d
                                        : report.object_loose_excluded_3d) =
          excluded;
    }

    for (const auto& ap : per_class) {
      auto it = std::find_if(report.per_class.begin(), report.per_class.end(),
                             [&](const ClassApCells& c) {
                               return c.interaction == ap.interaction;
                             });
      if (it == report.per_class.end()) {
        report.per_class.push_back({ap.interaction, ap.num_gt, {}});
        it = std::prev(report.per_class.end());
      }
      cell_ref(it->ap, ci) = ap.ap;
    }
  }
  std::sort(report.per_class.begin(), report.per_class.end(),
            [](const auto& a, const auto& b) {
              return a.interaction < b.interaction;
            });
  return report;
}

std::string report_to_json(const EvalReport& r) {
  nlohmann::json j;
  j["tracking"] = {{"mota", r.mota}, {"idf1", r.idf1}};
  j["interaction_map"] = cells_json(r.interaction_map);
  j["object_miou"] = cells_json(r.object_miou);
  j["per_video"] = nlohmann::json::array();
  for (const auto& v : r.per_video) {
    j["per_video"].push_back({{"video", v.video},
                              {"mota", v.mota},
                              {"idf1", v.idf1},
                              {"gt_boxes", v.gt_boxes}});
  }
  j["per_class"] = nlohmann::json::array();
  for (const auto& c : r.per_class) {
    j["per_class"].push_back({{"interaction", c.interaction},
                              {"num_gt", c.num_gt},
                              {"ap", cells_json(c.ap)}});
  }
  j["zero_gt_videos"] = r.zero_gt_videos;
  j["object_loose_excluded"] = {{"2d", r.object_loose_excluded_2d},
                                {"3d", r.object_loose_excluded_3d}};
  return j.dump(2);
}

EvalReport report_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  EvalReport r;
  r.mota = j.at("tracking").at("mota").get<double>();
  r.idf1 = j.at("tracking").at("idf1").get<double>();
  r.interaction_map = cells_from_json(j.at("interaction_map"));
  r.object_miou = cells_from_json(j.at("object_miou"));
  for (const auto& v : j.at("per_video")) {
    r.per_video.push_back({v.at("video").get<std::string>(),
                           v.at("mota").get<double>(),
                           v.at("idf1").get<double>(),
                           v.at("gt_boxes").get<int>()});
  }
  for (const auto& c : j.at("per_class")) {
    r.per_class.push_back({c.at("interaction").get<int>(),
                           c.at("num_gt").get<int>(),
                           cells_from_json(c.at("ap"))});
  }
  r.zero_gt_videos = j.at("zero_gt_videos").get<std::vector<std::string>>();
  r.object_loose_excluded_2d = j.at("object_loose_excluded").at("2d").get<int>();
  r.object_loose_excluded_3d = j.at("object_loose_excluded").at("3d").get<int>();
  return r;
}

std::string report_table(const EvalReport& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  auto pct = [](double v) { return 100.0 * v; };
  os << "Human Tracking     MOTA " << pct(r.mota) << "%  IDF1 " << pct(r.idf1)
     << "%\n";
  os << "                     strict-2D  strict-3D   loose-2D   loose-3D\n";
  auto row = [&](const char* name, const MetricCells& c) {
    os << name;
    for (int i = 0; i < 4; ++i) {
      os.width(11);
      os << pct(cell_val(c, i));
    }
    os << "\n";
  };
  row("Interaction mAP%  ", r.interaction_map);
  row("Object mIoU%      ", r.object_miou);
  if (!r.zero_gt_videos.empty()) {
    os << "videos without GT boxes (excluded from tracking means):";
    for (const auto& v : r.zero_gt_videos) os << " " << v;
    os << "\n";
  }
  return os.str();
}

}  // namespace sthoi
