#include "sthoi/decoders.hpp"

#include <algorithm>
#include <cmath>

namespace sthoi {

BoxOffset encode_offset(const Box& reference, const Box& target) {
  check_box(reference);
  check_box(target);
  if (reference.w <= 0.0 || reference.h <= 0.0 || target.w <= 0.0 ||
      target.h <= 0.0) {
    throw invalid_input("encode_offset: boxes need positive dimensions");
  }
  return {(target.x - reference.x) / reference.w,
          (target.y - reference.y) / reference.h,
          std::log(target.w / reference.w), std::log(target.h / reference.h)};
}

Box decode_offset(const Box& reference, const BoxOffset& offset) {
  check_box(reference);
  if (reference.w <= 0.0 || reference.h <= 0.0) {
    throw invalid_input("decode_offset: reference needs positive dimensions");
  }
  const double w = reference.w * std::exp(offset.dlogw);
  const double h = reference.h * std::exp(offset.dlogh);
  if (!std::isfinite(w) || !std::isfinite(h)) {
    throw invalid_input("decode_offset: exp overflow");
  }
  return {reference.x + offset.dx * reference.w,
          reference.y + offset.dy * reference.h, w, h};
}

double density_likelihood(const BoxOffset& a, const BoxOffset& b,
                          double sigma) {
  if (sigma <= 0.0) throw invalid_input("density_likelihood: sigma must be positive");
  const double dx = a.dx - b.dx;
  const double dy = a.dy - b.dy;
  const double dw = a.dlogw - b.dlogw;
  const double dh = a.dlogh - b.dlogh;
  const double d2 = dx * dx + dy * dy + dw * dw + dh * dh;
  return std::exp(-d2 / (2.0 * sigma * sigma));
}

int shortest_distance_select(const std::vector<Box>& proposals,
                             const Box& anchor) {
  if (proposals.empty()) throw invalid_input("shortest_distance_select: empty list");
  int best = 0;
  double best_d = center_distance(proposals[0], anchor);
  for (int i = 1; i < static_cast<int>(proposals.size()); ++i) {
    const double d = center_distance(proposals[i], anchor);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

int proposal_select_by_score(const std::vector<Box>& proposals,
                             const std::vector<double>& scores) {
  if (proposals.empty()) throw invalid_input("proposal_select_by_score: empty list");
  if (proposals.size() != scores.size()) {
    throw invalid_input("proposal_select_by_score: length mismatch");
  }
  int best = 0;
  for (int i = 1; i < static_cast<int>(scores.size()); ++i)
    if (scores[i] > scores[best]) best = i;
  return best;
}

double shape_distance(const Box& a, const Box& b) {
  check_box(a);
  check_box(b);
  const double dx = a.x - b.x, dy = a.y - b.y, dw = a.w - b.w, dh = a.h - b.h;
  return std::sqrt(dx * dx + dy * dy + dw * dw + dh * dh);
}

Assignment tbd_match(const std::vector<Box>& frame_a,
                     const std::vector<Box>& frame_b) {
  CostMatrix m(frame_a.size(), frame_b.size());
  for (std::size_t r = 0; r < frame_a.size(); ++r)
    for (std::size_t c = 0; c < frame_b.size(); ++c)
      m.at(r, c) = shape_distance(frame_a[r], frame_b[c]);
  return solve_assignment(m);
}

std::vector<ProposalTracklet> tbd_link(
    const std::vector<std::vector<Box>>& frames,
    const std::vector<std::vector<double>>& scores) {
  if (frames.size() != scores.size()) {
    throw invalid_input("tbd_link: frames/scores length mismatch");
  }
  std::vector<ProposalTracklet> tracklets;
  // open[i] = tracklet index owning proposal i of the previous frame
  std::vector<int> open;
  for (std::size_t f = 0; f < frames.size(); ++f) {
    if (scores[f].size() != frames[f].size()) {
      throw invalid_input("tbd_link: per-frame score length mismatch");
    }
    std::vector<int> next_open(frames[f].size(), -1);
    if (f > 0 && !frames[f - 1].empty() && !frames[f].empty()) {
      const Assignment a = tbd_match(frames[f - 1], frames[f]);
      for (auto [prev, cur] : a.pairs()) {
        if (open[prev] >= 0) {
          tracklets[open[prev]].indices.push_back(cur);
          next_open[cur] = open[prev];
        }
      }
    }
    for (std::size_t i = 0; i < frames[f].size(); ++i) {
      if (next_open[i] < 0) {
        ProposalTracklet t;
        t.first_frame = static_cast<int>(f);
        t.indices.push_back(static_cast<int>(i));
        next_open[i] = static_cast<int>(tracklets.size());
        tracklets.push_back(std::move(t));
      }
    }
    open = std::move(next_open);
  }
  for (auto& t : tracklets) {
    double sum = 0.0;
    for (std::size_t k = 0; k < t.indices.size(); ++k)
      sum += scores[t.first_frame + k][t.indices[k]];
    t.mean_score = sum / t.indices.size();
  }
  return tracklets;
}

std::vector<int> psot_track(const std::vector<std::vector<Box>>& frames,
                            int initial) {
  if (frames.empty()) return {};
  if (initial < 0 || initial >= static_cast<int>(frames.front().size())) {
    throw invalid_input("psot_track: initial proposal out of range");
  }
  std::vector<int> out;
  out.push_back(initial);
  Box tracked = frames.front()[initial];
  for (std::size_t f = 1; f < frames.size(); ++f) {
    if (frames[f].empty()) throw invalid_input("psot_track: empty frame");
    int best = 0;
    double best_iou = iou2d(tracked, frames[f][0]);
    for (int i = 1; i < static_cast<int>(frames[f].size()); ++i) {
      const double iou = iou2d(tracked, frames[f][i]);
      if (iou > best_iou) {
        best_iou = iou;
        best = i;
      }
    }
    out.push_back(best);
    tracked = frames[f][best];
  }
  return out;
}

}  // namespace sthoi
