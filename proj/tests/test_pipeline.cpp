#include <doctest.h>

#include <sstream>

#include "sthoi/dataset.hpp"
#include "sthoi/evaluate.hpp"
#include "sthoi/synthetic.hpp"

using namespace sthoi;

namespace {

const char* kGtLine =
    R"({"video":"v1","track_id":1,"interaction":7,"frames":[)"
    R"({"second":0,"human":[0,0,10,10],"objects":[[20,0,5,5]]},)"
    R"({"second":1,"human":[1,0,10,10],"objects":[[21,0,5,5]]}]})";

std::vector<SthoiTracklet> parse(const std::string& text, bool gt) {
  std::istringstream is(text);
  return read_tracklets(is, gt);
}

}  // namespace

TEST_CASE("JSONL parsing and serialization round trip") {
  const auto ts = parse(kGtLine, true);
  REQUIRE(ts.size() == 1);
  CHECK(ts[0].video == "v1");
  CHECK(ts[0].interaction == 7);
  CHECK(ts[0].frames[1].human.x == 1);
  CHECK(ts[0].frames[0].score == 1.0);  // default when absent
  std::ostringstream os;
  write_tracklets(os, ts);
  const auto back = parse(os.str(), true);
  CHECK(back.size() == 1);
  CHECK(back[0].frames[1].objects == ts[0].frames[1].objects);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse("{broken", true),
                       doctest::Contains("line 1"), parse_error);
  const std::string two_lines = std::string(kGtLine) + "\n{\"video\":3}";
  CHECK_THROWS_WITH_AS(parse(two_lines, true), doctest::Contains("line 2"),
                       parse_error);
}

TEST_CASE("GT records must carry objects, out-of-range classes are rejected") {
  const std::string no_obj =
      R"({"video":"v","track_id":1,"interaction":7,"frames":[)"
      R"({"second":0,"human":[0,0,1,1],"objects":[]}]})";
  CHECK_THROWS_AS(parse(no_obj, true), parse_error);
  CHECK(parse(no_obj, false).size() == 1);  // predictions may omit objects
  const std::string bad_class =
      R"({"video":"v","track_id":1,"interaction":52,"frames":[)"
      R"({"second":0,"human":[0,0,1,1],"objects":[[0,0,1,1]]}]})";
  CHECK_THROWS_AS(parse(bad_class, true), parse_error);
}

TEST_CASE("seconds must increase strictly") {
  const std::string dup =
      R"({"video":"v","track_id":1,"interaction":1,"frames":[)"
      R"({"second":1,"human":[0,0,1,1],"objects":[[0,0,1,1]]},)"
      R"({"second":1,"human":[0,0,1,1],"objects":[[0,0,1,1]]}]})";
  CHECK_THROWS_AS(parse(dup, true), parse_error);
}

TEST_CASE("an oracle prediction yields the all-perfect report") {
  const auto bench = gen_synthetic({.seed = 5, .n_videos = 3, .n_seconds = 8});
  EvalConfig cfg;
  const auto r = eval_all(bench.gt, bench.gt, cfg);
  CHECK(r.mota == 1.0);
  CHECK(r.idf1 == 1.0);
  CHECK(r.interaction_map == MetricCells{1.0, 1.0, 1.0, 1.0});
  CHECK(r.object_miou == MetricCells{1.0, 1.0, 1.0, 1.0});
}

TEST_CASE("planted errors reproduce the generator's expected report") {
  const SyntheticSpec spec{.seed = 9,
                           .n_videos = 4,
                           .n_seconds = 10,
                           .misses_per_video = 2,
                           .fp_tracklets_per_video = 1};
  const auto bench = gen_synthetic(spec);
  EvalConfig cfg;
  const auto r = eval_all(bench.gt, bench.pred, cfg);
  CHECK(r.mota == doctest::Approx(bench.expected.mota));
  CHECK(r.idf1 == doctest::Approx(bench.expected.idf1));
  CHECK(r.interaction_map.strict_2d ==
        doctest::Approx(bench.expected.interaction_map.strict_2d));
  CHECK(r.object_miou.strict_2d ==
        doctest::Approx(bench.expected.object_miou.strict_2d));
  CHECK(r.object_miou.loose_2d ==
        doctest::Approx(bench.expected.object_miou.loose_2d));
}

TEST_CASE("eval_all is deterministic across job counts") {
  const auto bench = gen_synthetic({.seed = 13,
                                    .n_videos = 6,
                                    .n_seconds = 6,
                                    .misses_per_video = 1,
                                    .fp_tracklets_per_video = 1});
  EvalConfig serial;
  serial.jobs = 1;
  EvalConfig parallel;
  parallel.jobs = 4;
  const auto a = eval_all(bench.gt, bench.pred, serial);
  const auto b = eval_all(bench.gt, bench.pred, parallel);
  CHECK(a == b);
}

TEST_CASE("error taxonomy: empty GT and unknown prediction videos") {
  const auto bench = gen_synthetic({.seed = 17, .n_videos = 1, .n_seconds = 4});
  EvalConfig cfg;
  CHECK_THROWS_AS(eval_all({}, bench.gt, cfg), invalid_input);
  auto stray = bench.gt;
  stray[0].video = "nowhere";
  CHECK_THROWS_AS(eval_all(bench.gt, stray, cfg), id_mismatch);
}

TEST_CASE("report JSON round trip preserves every field") {
  const auto bench = gen_synthetic({.seed = 21,
                                    .n_videos = 2,
                                    .n_seconds = 5,
                                    .misses_per_video = 1});
  EvalConfig cfg;
  const auto r = eval_all(bench.gt, bench.pred, cfg);
  const auto back = report_from_json(report_to_json(r));
  CHECK(back == r);
  CHECK(report_table(r).find("MOTA") != std::string::npos);
}

TEST_CASE("gen_synthetic closed forms: one miss per video") {
  const auto bench = gen_synthetic(
      {.seed = 3, .n_videos = 2, .n_seconds = 10, .misses_per_video = 1});
  CHECK(bench.expected.mota == doctest::Approx(0.9));
  const auto again = gen_synthetic(
      {.seed = 3, .n_videos = 2, .n_seconds = 10, .misses_per_video = 1});
  std::ostringstream a, b;
  write_tracklets(a, bench.pred);
  write_tracklets(b, again.pred);
  CHECK(a.str() == b.str());
}
