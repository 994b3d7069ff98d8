#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sthoi/tracklets.hpp"

namespace sthoi {

class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// JSON Lines, one record per ST-HOI tracklet:
//   {"video": "...", "track_id": 1, "interaction": 7,
//    "frames": [{"second": 0, "human": [x,y,w,h], "score": 0.9,
//                "objects": [[x,y,w,h], ...]}]}
// Predictions carry "score"; GT carries at least one object per frame.
std::vector<SthoiTracklet> read_tracklets(std::istream& is,
                                          bool require_gt_objects);
std::vector<SthoiTracklet> read_tracklets_file(const std::string& path,
                                               bool require_gt_objects);
void write_tracklets(std::ostream& os, const std::vector<SthoiTracklet>& ts);
void write_tracklets_file(const std::string& path,
                          const std::vector<SthoiTracklet>& ts);

}  // namespace sthoi
