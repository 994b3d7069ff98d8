#include "sthoi/tracklets.hpp"

#include <numeric>

namespace sthoi {

std::vector<SthoiTracklet> mask_and_split(const ScoredHumanTracklet& t,
                                          double alpha) {
  for (std::size_t i = 1; i < t.seconds.size(); ++i) {
    if (t.seconds[i].second <= t.seconds[i - 1].second) {
      throw invalid_input("scored tracklet seconds must be strictly increasing");
    }
  }
  std::vector<SthoiTracklet> out;
  for (int cls = 1; cls <= kNumInteractions; ++cls) {
    SthoiTracklet cur;
    auto flush = [&] {
      if (!cur.frames.empty()) {
        out.push_back(std::move(cur));
        cur = SthoiTracklet{};
      }
    };
    for (const auto& s : t.seconds) {
      const double score = s.scores[cls - 1];
      // "under alpha" is strict: a score equal to alpha survives.
      const bool keep = score >= alpha && score > 0.0;
      const bool contiguous =
          !cur.frames.empty() && cur.frames.back().second + 1 == s.second;
      if (!keep || (!cur.frames.empty() && !contiguous)) flush();
      if (keep) {
        if (cur.frames.empty()) {
          cur.video = t.video;
          cur.track_id = t.track_id;
          cur.interaction = cls;
        }
        cur.frames.push_back({s.second, s.human, score, {}});
      }
    }
    flush();
  }
  return out;
}

std::vector<SthoiTracklet> split_by_alpha(const SthoiTracklet& t,
                                          double alpha) {
  std::vector<SthoiTracklet> out;
  SthoiTracklet cur;
  auto flush = [&] {
    if (!cur.frames.empty()) {
      out.push_back(std::move(cur));
      cur = SthoiTracklet{};
    }
  };
  for (const auto& f : t.frames) {
    const bool keep = f.score >= alpha && f.score > 0.0;
    const bool contiguous =
        !cur.frames.empty() && cur.frames.back().second + 1 == f.second;
    if (!keep || (!cur.frames.empty() && !contiguous)) flush();
    if (keep) {
      if (cur.frames.empty()) {
        cur.video = t.video;
        cur.track_id = t.track_id;
        cur.interaction = t.interaction;
      }
      cur.frames.push_back(f);
    }
  }
  flush();
  return out;
}

double tracklet_score(const SthoiTracklet& t) {
  if (t.frames.empty()) throw invalid_input("tracklet_score: empty tracklet");
  double sum = 0.0;
  for (const auto& f : t.frames) sum += f.score;
  return sum / static_cast<double>(t.frames.size());
}

}  // namespace sthoi
