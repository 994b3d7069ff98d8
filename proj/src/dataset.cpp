#include "sthoi/dataset.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace sthoi {
namespace {

Box parse_box(const nlohmann::json& j, int line_no) {
  if (!j.is_array() || j.size() != 4) {
    throw parse_error("line " + std::to_string(line_no) +
                      ": box must be [x,y,w,h]");
  }
  Box b{j[0].get<double>(), j[1].get<double>(), j[2].get<double>(),
        j[3].get<double>()};
  if (!box_valid(b)) {
    throw parse_error("line " + std::to_string(line_no) + ": invalid box");
  }
  return b;
}

nlohmann::json box_json(const Box& b) {
  return nlohmann::json::array({b.x, b.y, b.w, b.h});
}

}  // namespace

std::vector<SthoiTracklet> read_tracklets(std::istream& is,
                                          bool require_gt_objects) {
  std::vector<SthoiTracklet> out;
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw parse_error("line " + std::to_string(line_no) + ": " + e.what());
    }
    SthoiTracklet t;
    try {
      t.video = j.at("video").get<std::string>();
      t.track_id = j.at("track_id").get<std::int64_t>();
      t.interaction = j.at("interaction").get<int>();
      if (t.interaction < 1 || t.interaction > kNumInteractions) {
        throw parse_error("line " + std::to_string(line_no) +
                          ": interaction must be in [1,51]");
      }
      for (const auto& fj : j.at("frames")) {
        SthoiFrame f;
        f.second = fj.at("second").get<int>();
        f.human = parse_box(fj.at("human"), line_no);
        f.score = fj.value("score", 1.0);
        if (fj.contains("objects")) {
          for (const auto& oj : fj["objects"]) {
            f.objects.push_back(parse_box(oj, line_no));
          }
        }
        if (require_gt_objects && f.objects.empty()) {
          throw parse_error("line " + std::to_string(line_no) +
                            ": GT frame needs at least one object box");
        }
        t.frames.push_back(std::move(f));
      }
    } catch (const nlohmann::json::exception& e) {
      throw parse_error("line " + std::to_string(line_no) + ": " + e.what());
    }
    if (t.frames.empty()) {
      throw parse_error("line " + std::to_string(line_no) + ": empty tracklet");
    }
    for (std::size_t i = 1; i < t.frames.size(); ++i) {
      if (t.frames[i].second <= t.frames[i - 1].second) {
        throw parse_error("line " + std::to_string(line_no) +
                          ": frame seconds must be strictly increasing");
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<SthoiTracklet> read_tracklets_file(const std::string& path,
                                               bool require_gt_objects) {
  std::ifstream is(path);
  if (!is) throw parse_error("cannot open: " + path);
  return read_tracklets(is, require_gt_objects);
}

void write_tracklets(std::ostream& os, const std::vector<SthoiTracklet>& ts) {
  for (const auto& t : ts) {
    nlohmann::json j;
    j["video"] = t.video;
    j["track_id"] = t.track_id;
    j["interaction"] = t.interaction;
    j["frames"] = nlohmann::json::array();
    for (const auto& f : t.frames) {
      nlohmann::json fj;
      fj["second"] = f.second;
      fj["human"] = box_json(f.human);
      fj["score"] = f.score;
      fj["objects"] = nlohmann::json::array();
      for (const auto& o : f.objects) fj["objects"].push_back(box_json(o));
      j["frames"].push_back(std::move(fj));
    }
    os << j.dump() << "\n";
  }
}

void write_tracklets_file(const std::string& path,
                          const std::vector<SthoiTracklet>& ts) {
  std::ofstream os(path);
  if (!os) throw parse_error("cannot open for writing: " + path);
  write_tracklets(os, ts);
}

}  // namespace sthoi
