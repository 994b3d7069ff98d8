#pragma once

#include <vector>

#include "sthoi/assignment.hpp"
#include "sthoi/geometry.hpp"

namespace sthoi {

// Box-relative regression target: {(x_t-x_r)/w_r, (y_t-y_r)/h_r,
// log(w_t/w_r), log(h_t/h_r)}.
struct BoxOffset {
  double dx = 0.0;
  double dy = 0.0;
  double dlogw = 0.0;
  double dlogh = 0.0;
};

BoxOffset encode_offset(const Box& reference, const Box& target);
Box decode_offset(const Box& reference, const BoxOffset& offset);

// exp(-||a - b||^2 / (2 sigma^2)) over the four offset components.
double density_likelihood(const BoxOffset& a, const BoxOffset& b,
                          double sigma = 1.0);

// Proposal with the smallest center distance to the anchor; ties -> lowest
// index. Returns the index into proposals.
int shortest_distance_select(const std::vector<Box>& proposals,
                             const Box& anchor);

// argmax score; ties -> lowest index.
int proposal_select_by_score(const std::vector<Box>& proposals,
                             const std::vector<double>& scores);

// Euclidean distance between {x, y, w, h} shape vectors.
double shape_distance(const Box& a, const Box& b);

// Hungarian matching of two proposal frames over the shape-vector cost
// matrix.
Assignment tbd_match(const std::vector<Box>& frame_a,
                     const std::vector<Box>& frame_b);

struct ProposalTracklet {
  std::vector<int> indices;  // one proposal index per covered frame
  int first_frame = 0;
  double mean_score = 0.0;
};

// Chains per-frame TBD assignments into proposal tracklets; tracklet score is
// the mean interaction score of its members. Proposals that appear unmatched
// mid-sequence start new tracklets.
std::vector<ProposalTracklet> tbd_link(
    const std::vector<std::vector<Box>>& frames,
    const std::vector<std::vector<double>>& scores);

// SOT-reduced proposal tracking: per frame pick the proposal with maximal IoU
// to the previous selection. Returns one proposal index per frame.
std::vector<int> psot_track(const std::vector<std::vector<Box>>& frames,
                            int initial);

}  // namespace sthoi
