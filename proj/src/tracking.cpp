#include "sthoi/tracking.hpp"

#include <algorithm>
#include <set>

#include "sthoi/assignment.hpp"

namespace sthoi {
namespace {

constexpr double kInfeasible = 1e6;

std::vector<int> sorted_by_id(const std::vector<IdentifiedBox>& v,
                              const char* side) {
  std::vector<int> order(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return v[a].track_id < v[b].track_id;
  });
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (v[order[i - 1]].track_id == v[order[i]].track_id) {
      throw invalid_input(std::string("duplicate track id in ") + side +
                          " boxes within one second");
    }
  }
  return order;
}

}  // namespace

SecondMatch match_second(const std::vector<IdentifiedBox>& gt,
                         const std::vector<IdentifiedBox>& pred,
                         double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) {
    throw invalid_input("iou_threshold must be in (0,1]");
  }
  const auto gorder = sorted_by_id(gt, "gt");
  const auto porder = sorted_by_id(pred, "pred");

  CostMatrix m(gorder.size(), porder.size());
  for (std::size_t r = 0; r < gorder.size(); ++r) {
    for (std::size_t c = 0; c < porder.size(); ++c) {
      const double iou = iou2d(gt[gorder[r]].box, pred[porder[c]].box);
      m.at(r, c) = iou > iou_threshold ? 1.0 - iou : kInfeasible;
    }
  }
  const Assignment a = solve_assignment(m);

  SecondMatch out;
  std::vector<char> gt_matched(gt.size(), 0), pred_matched(pred.size(), 0);
  for (auto [r, c] : a.pairs()) {
    if (m.at(r, c) >= kInfeasible) continue;
    const int gi = gorder[r];
    const int pi = porder[c];
    out.matches.emplace_back(gi, pi);
    gt_matched[gi] = 1;
    pred_matched[pi] = 1;
  }
  for (int i = 0; i < static_cast<int>(gt.size()); ++i)
    if (!gt_matched[i]) out.unmatched_gt.push_back(i);
  for (int i = 0; i < static_cast<int>(pred.size()); ++i)
    if (!pred_matched[i]) out.unmatched_pred.push_back(i);
  return out;
}

VideoTrackingResult evaluate_video_tracking(const VideoTracks& gt,
                                            const VideoTracks& pred,
                                            double iou_threshold) {
  VideoTrackingResult res;
  res.video = gt.video.empty() ? pred.video : gt.video;

  // Per-second box lists.
  std::set<int> seconds;
  std::map<int, std::vector<IdentifiedBox>> gt_at, pred_at;
  for (const auto& t : gt.tracks)
    for (const auto& f : t.frames) {
      gt_at[f.second].push_back({t.id, f.box});
      seconds.insert(f.second);
      ++res.gt_boxes;
    }
  for (const auto& t : pred.tracks)
    for (const auto& f : t.frames) {
      pred_at[f.second].push_back({t.id, f.box});
      seconds.insert(f.second);
      ++res.pred_boxes;
    }

  // IDF1: overlap counts per identity pair, then optimal identity assignment.
  std::map<std::int64_t, int> gt_ids, pred_ids;
  for (const auto& t : gt.tracks) gt_ids.emplace(t.id, 0);
  for (const auto& t : pred.tracks) pred_ids.emplace(t.id, 0);
  {
    int k = 0;
    for (auto& [id, idx] : gt_ids) idx = k++;
    k = 0;
    for (auto& [id, idx] : pred_ids) idx = k++;
  }
  std::vector<std::vector<int>> overlap(gt_ids.size(),
                                        std::vector<int>(pred_ids.size(), 0));
  for (int s : seconds) {
    const auto git = gt_at.find(s);
    const auto pit = pred_at.find(s);
    if (git == gt_at.end() || pit == pred_at.end()) continue;
    for (const auto& g : git->second)
      for (const auto& p : pit->second)
        if (iou2d(g.box, p.box) > iou_threshold)
          ++overlap[gt_ids[g.track_id]][pred_ids[p.track_id]];
  }
  if (!overlap.empty() && !pred_ids.empty()) {
    CostMatrix m(gt_ids.size(), pred_ids.size());
    for (std::size_t r = 0; r < gt_ids.size(); ++r)
      for (std::size_t c = 0; c < pred_ids.size(); ++c)
        m.at(r, c) = -static_cast<double>(overlap[r][c]);
    const Assignment a = solve_assignment(m);
    std::vector<std::int64_t> gid(gt_ids.size()), pid(pred_ids.size());
    for (const auto& [id, idx] : gt_ids) gid[idx] = id;
    for (const auto& [id, idx] : pred_ids) pid[idx] = id;
    for (auto [r, c] : a.pairs()) {
      if (overlap[r][c] > 0) {
        res.identity_map[gid[r]] = pid[c];
        res.idtp += overlap[r][c];
      }
    }
  }

  // MOTA event counting plus the per-frame verdict stream.
  std::map<std::int64_t, std::int64_t> last_match;  // gt id -> last pred id
  for (int s : seconds) {
    static const std::vector<IdentifiedBox> kNone;
    const auto git = gt_at.find(s);
    const auto pit = pred_at.find(s);
    const auto& g = git == gt_at.end() ? kNone : git->second;
    const auto& p = pit == pred_at.end() ? kNone : pit->second;
    const SecondMatch m = match_second(g, p, iou_threshold);

    res.misses += static_cast<int>(m.unmatched_gt.size());
    res.false_positives += static_cast<int>(m.unmatched_pred.size());
    for (auto [gi, pi] : m.matches) {
      const std::int64_t gid = g[gi].track_id;
      const std::int64_t pid = p[pi].track_id;
      const auto it = last_match.find(gid);
      if (it != last_match.end() && it->second != pid) ++res.id_switches;
      last_match[gid] = pid;

      const auto idm = res.identity_map.find(gid);
      const bool id_ok = idm != res.identity_map.end() && idm->second == pid;
      FrameVerdict v;
      v.second = s;
      if (id_ok) {
        v.tracking = TrackVerdict::TruePositive;
        v.matched_gt = gid;
      } else {
        v.tracking = TrackVerdict::FalsePositive;
      }
      res.verdicts.emplace_back(pid, v);
    }
    for (int pi : m.unmatched_pred) {
      FrameVerdict v;
      v.second = s;
      v.tracking = TrackVerdict::FalsePositive;
      res.verdicts.emplace_back(p[pi].track_id, v);
    }
    for (int gi : m.unmatched_gt) {
      FrameVerdict v;
      v.second = s;
      v.tracking = TrackVerdict::Miss;
      res.verdicts.emplace_back(g[gi].track_id, v);
    }
  }

  if (res.gt_boxes > 0) {
    res.mota = 1.0 - static_cast<double>(res.misses + res.false_positives +
                                         res.id_switches) /
                         res.gt_boxes;
  }
  const int idfp = res.pred_boxes - res.idtp;
  const int idfn = res.gt_boxes - res.idtp;
  const int denom = 2 * res.idtp + idfp + idfn;
  res.idf1 = denom > 0 ? 2.0 * res.idtp / denom : 0.0;
  return res;
}

TrackingScore aggregate_tracking(std::vector<VideoTrackingResult> results) {
  TrackingScore out;
  std::sort(results.begin(), results.end(),
            [](const auto& a, const auto& b) { return a.video < b.video; });
  int n = 0;
  for (auto& r : results) {
    if (r.gt_boxes == 0) {
      out.zero_gt_videos.push_back(r.video);
    } else {
      out.mota += r.mota;
      out.idf1 += r.idf1;
      ++n;
    }
  }
  if (n > 0) {
    out.mota /= n;
    out.idf1 /= n;
  }
  out.per_video = std::move(results);
  return out;
}

VerdictIndex::VerdictIndex(const VideoTrackingResult& r) {
  for (const auto& [id, v] : r.verdicts) {
    if (v.tracking == TrackVerdict::Miss) continue;
    tp_[id][v.second] = v.tracking == TrackVerdict::TruePositive;
  }
}

bool VerdictIndex::is_tp(std::int64_t track_id, int second) const {
  const auto it = tp_.find(track_id);
  if (it == tp_.end()) return false;
  const auto jt = it->second.find(second);
  return jt != it->second.end() && jt->second;
}

}  // namespace sthoi
