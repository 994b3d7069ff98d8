// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each check pits the library against an independent oracle
// or an analytically known value.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "sthoi/assignment.hpp"
#include "sthoi/decoders.hpp"
#include "sthoi/evaluate.hpp"
#include "sthoi/geometry.hpp"
#include "sthoi/heatmap.hpp"
#include "sthoi/split.hpp"
#include "sthoi/synthetic.hpp"
#include "sthoi/taxonomy.hpp"
#include "sthoi/tracking.hpp"
#include "sthoi/tracklets.hpp"

using namespace sthoi;

namespace {

int failures = 0;

void report(int criterion, const char* name, bool ok, double seconds) {
  std::printf("criterion %2d [%s]: %s (%.2fs)\n", criterion,
              name, ok ? "PASS" : "FAIL", seconds);
  if (!ok) ++failures;
}

void run(int criterion, const char* name, const std::function<bool()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    std::printf("criterion %2d threw: %s\n", criterion, e.what());
  }
  const std::chrono::duration<double> dt =
      std::chrono::steady_clock::now() - t0;
  report(criterion, name, ok, dt.count());
}

// ---- criterion 1: voxel-counting tube IoU oracle -------------------------

bool tube_iou_oracle() {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> frames(1, 5), coord(0, 24), dim(1, 8);
  const auto t0 = std::chrono::steady_clock::now();
  for (int it = 0; it < 200; ++it) {
    Tube a, b;
    const int n = frames(rng), m = frames(rng);
    for (int i = 0; i < n; ++i) {
      a.boxes.push_back({(double)coord(rng), (double)coord(rng),
                         (double)dim(rng), (double)dim(rng)});
    }
    for (int i = 0; i < m; ++i) {
      b.boxes.push_back({(double)coord(rng), (double)coord(rng),
                         (double)dim(rng), (double)dim(rng)});
    }
    // Voxel oracle: count occupied unit voxels over the common (padded) span.
    long inter = 0, uni = 0;
    const int span = std::max(n, m);
    for (int t = 0; t < span; ++t) {
      for (int x = 0; x < 32; ++x) {
        for (int y = 0; y < 32; ++y) {
          const bool in_a =
              t < n && x >= a.boxes[t].x && x < a.boxes[t].x + a.boxes[t].w &&
              y >= a.boxes[t].y && y < a.boxes[t].y + a.boxes[t].h;
          const bool in_b =
              t < m && x >= b.boxes[t].x && x < b.boxes[t].x + b.boxes[t].w &&
              y >= b.boxes[t].y && y < b.boxes[t].y + b.boxes[t].h;
          inter += in_a && in_b;
          uni += in_a || in_b;
        }
      }
    }
    const double want = uni == 0 ? 0.0 : (double)inter / (double)uni;
    if (std::abs(tube_iou3d(a, b) - want) > 1e-9) return false;
  }
  const std::chrono::duration<double> dt =
      std::chrono::steady_clock::now() - t0;
  return dt.count() < 1.0;
}

// ---- criterion 2: brute-force assignment oracle --------------------------

double permutation_minimum(const CostMatrix& m) {
  const bool transpose = m.rows > m.cols;
  const std::size_t n = transpose ? m.cols : m.rows;
  const std::size_t k = transpose ? m.rows : m.cols;
  std::vector<int> perm(k);
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      c += transpose ? m.at(perm[i], i) : m.at(i, perm[i]);
    }
    best = std::min(best, c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

bool assignment_oracle() {
  std::mt19937_64 rng(202);
  // Integer-valued costs make the optimal sum exactly representable, so the
  // comparison can be equality rather than a tolerance.
  std::uniform_int_distribution<int> cost(-50, 50), size(1, 7);
  const auto t0 = std::chrono::steady_clock::now();
  for (int it = 0; it < 200; ++it) {
    CostMatrix m(size(rng), size(rng));
    for (auto& c : m.cost) c = (double)cost(rng);
    if (solve_assignment(m).total_cost != permutation_minimum(m)) return false;
  }
  const std::chrono::duration<double> dt =
      std::chrono::steady_clock::now() - t0;
  return dt.count() < 5.0;
}

// ---- criterion 3: analytic tracking scenarios ----------------------------

HumanTrack track(std::int64_t id, int first, int n, double x = 0.0) {
  HumanTrack t;
  t.id = id;
  for (int s = 0; s < n; ++s) t.frames.push_back({first + s, {x, 0, 10, 10}});
  return t;
}

bool tracking_analytics() {
  const VideoTracks gt{"v", {track(1, 0, 10)}};
  const auto perfect = evaluate_video_tracking(gt, {"v", {track(9, 0, 10)}});
  if (perfect.mota != 1.0 || perfect.idf1 != 1.0) return false;
  const auto miss = evaluate_video_tracking(gt, {"v", {track(1, 1, 9)}});
  if (miss.mota != 0.9) return false;
  const auto split =
      evaluate_video_tracking(gt, {"v", {track(2, 0, 5), track(3, 5, 5)}});
  return split.idf1 == 0.5;
}

// ---- criterion 4: step-wise monotonicity fuzz ----------------------------

struct Scenario {
  std::vector<SthoiTracklet> gt, pred;
};

Scenario fuzz_scenario(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_videos(1, 2), n_tracks(1, 3),
      n_seconds(3, 8), jitter(-10, 10), cls(1, 6);
  std::uniform_real_distribution<double> score(0.05, 1.0), drop(0.0, 1.0);
  Scenario s;
  const int nv = n_videos(rng);
  for (int v = 0; v < nv; ++v) {
    const std::string video = "v" + std::to_string(v);
    const int nt = n_tracks(rng), ns = n_seconds(rng);
    for (int k = 0; k < nt; ++k) {
      // GT humans live on a 1000px grid so every prediction can only ever
      // overlap its own ground truth.
      const double bx = 1000.0 * k;
      SthoiTracklet g;
      g.video = video;
      g.track_id = k + 1;
      g.interaction = cls(rng);
      SthoiTracklet p = g;
      p.track_id = 100 + k;
      for (int t = 0; t < ns; ++t) {
        const Box human{bx, 0, 100, 100};
        const Box object{bx + 150, 0, 50, 50};
        g.frames.push_back({t, human, 1.0, {object}});
        if (drop(rng) < 0.85) {
          const Box ph{bx + jitter(rng), (double)jitter(rng), 100, 100};
          const Box po{bx + 150 + jitter(rng), (double)jitter(rng), 50, 50};
          p.frames.push_back({t, ph, score(rng), {po}});
        }
      }
      s.gt.push_back(g);
      if (!p.frames.empty()) s.pred.push_back(p);
    }
  }
  return s;
}

bool leq(double a, double b) { return a <= b + 1e-12; }

bool cells_strict_leq_loose(const MetricCells& c) {
  return leq(c.strict_2d, c.loose_2d) && leq(c.strict_3d, c.loose_3d);
}

bool stepwise_monotonicity() {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> alpha(0.0, 0.6), score(0.05, 1.0);
  EvalConfig cfg;
  for (int it = 0; it < 1000; ++it) {
    auto s = fuzz_scenario(rng);
    cfg.alpha = alpha(rng);
    const auto base = eval_all(s.gt, s.pred, cfg);
    if (!cells_strict_leq_loose(base.interaction_map)) return false;
    if (!cells_strict_leq_loose(base.object_miou)) return false;

    // A pure false positive: far from every GT, fresh identity.
    SthoiTracklet fp;
    fp.video = s.gt[0].video;
    fp.track_id = 999;
    fp.interaction = s.gt[0].interaction;
    for (int t = 0; t < 3; ++t) {
      fp.frames.push_back(
          {t, {50000, 50000, 100, 100}, score(rng), {{50200, 50000, 50, 50}}});
    }
    auto with_fp = s.pred;
    with_fp.push_back(fp);
    const auto worse = eval_all(s.gt, with_fp, cfg);
    if (!leq(worse.mota, base.mota) || !leq(worse.idf1, base.idf1)) {
      return false;
    }
    const auto& a = worse.interaction_map;
    const auto& b = base.interaction_map;
    if (!leq(a.strict_2d, b.strict_2d) || !leq(a.strict_3d, b.strict_3d) ||
        !leq(a.loose_2d, b.loose_2d) || !leq(a.loose_3d, b.loose_3d)) {
      return false;
    }
  }
  return true;
}

// ---- criterion 5: masking and splitting fuzz -----------------------------

bool masking_fuzz() {
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int it = 0; it < 1000; ++it) {
    const int n = 1 + (int)(rng() % 15);
    ScoredHumanTracklet t;
    t.video = "v";
    t.track_id = 1;
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) {
      s[i] = u(rng);
      ScoredSecond sec;
      sec.second = i;
      sec.human = {0, 0, 10, 10};
      sec.scores[4] = s[i];
      t.seconds.push_back(sec);
    }
    const double alpha = it % 10 == 0 ? 0.0 : u(rng);
    const auto parts = mask_and_split(t, alpha);
    std::set<int> covered;
    for (const auto& p : parts) {
      for (std::size_t i = 0; i < p.frames.size(); ++i) {
        if (i > 0 && p.frames[i].second != p.frames[i - 1].second + 1) {
          return false;  // run not contiguous
        }
        if (!covered.insert(p.frames[i].second).second) return false;
      }
    }
    std::set<int> expected;
    for (int i = 0; i < n; ++i) {
      if (s[i] >= alpha && s[i] > 0.0) expected.insert(i);
    }
    if (covered != expected) return false;
    if (alpha == 0.0 && parts.size() != 1) return false;  // identity partition
  }
  return true;
}

// ---- criterion 6: published heatmap constants ----------------------------

bool heatmap_constants() {
  HeatmapConfig cfg;
  if (cfg.threshold_for(SizeClass::Small) != 0.7 ||
      cfg.threshold_for(SizeClass::Medium) != 0.6 ||
      cfg.threshold_for(SizeClass::Large) != 0.5) {
    return false;
  }
  if (size_classify(100, 30) != SizeClass::Small ||
      size_classify(100, 30.1) != SizeClass::Medium ||
      size_classify(100, 100) != SizeClass::Medium ||
      size_classify(100, 100.1) != SizeClass::Large) {
    return false;
  }
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Heatmap a(16, 16), b(16, 16), c(16, 16);
  for (int i = 0; i < 16 * 16; ++i) {
    a.values[i] = (float)u(rng);
    b.values[i] = (float)u(rng);
    c.values[i] = (float)u(rng);
  }
  const auto eq = fuse_equal(a, b, c);
  const auto dyn = fuse_dynamic(a, b, c, {1.0 / 3, 1.0 / 3, 1.0 / 3});
  if (eq.values != dyn.values) return false;  // bitwise
  const auto blended = blend_long_term(a, b, 0.0);
  return blended.values == a.values;  // epsilon 0 is the identity
}

// ---- criterion 7: heatmap geometry vs pixel-scan oracle ------------------

bool heatmap_geometry() {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> coord(4, 40), dim(2, 14), tt(0.2, 0.9);
  for (int it = 0; it < 500; ++it) {
    const Box box{coord(rng), coord(rng), dim(rng), dim(rng)};
    const auto h = gt_heatmap(box, 56, 56);
    // Peak value must sit at the pixel nearest the box center.
    const int px = (int)std::lround(box.cx()), py = (int)std::lround(box.cy());
    float mx = 0.0f;
    for (float v : h.values) mx = std::max(mx, v);
    if (std::abs(h.at(px, py) - mx) > 1e-12f) return false;

    const auto n = normalize_peak(h);
    double t1 = tt(rng), t2 = tt(rng);
    if (t1 > t2) std::swap(t1, t2);
    const auto big = threshold_to_box(n, t1);
    const auto small = threshold_to_box(n, t2);
    if (!big || !small) return false;
    if (small->x < big->x - 1e-9 || small->y < big->y - 1e-9 ||
        small->x + small->w > big->x + big->w + 1e-9 ||
        small->y + small->h > big->y + big->h + 1e-9) {
      return false;  // nestedness
    }
    // Full-grid scan oracle for the tightest box.
    int x0 = 56, y0 = 56, x1 = -1, y1 = -1;
    for (int y = 0; y < 56; ++y) {
      for (int x = 0; x < 56; ++x) {
        if (n.at(x, y) >= t1) {
          x0 = std::min(x0, x);
          y0 = std::min(y0, y);
          x1 = std::max(x1, x);
          y1 = std::max(y1, y);
        }
      }
    }
    const Box want{(double)x0, (double)y0, (double)(x1 - x0 + 1),
                   (double)(y1 - y0 + 1)};
    if (!(*big == want)) return false;
  }
  return true;
}

// ---- criterion 8: offset round trip and density fixed points -------------

bool offset_roundtrip() {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> pos(-500, 500), dim(0.25, 80);
  for (int it = 0; it < 10000; ++it) {
    const Box r{pos(rng), pos(rng), dim(rng), dim(rng)};
    const Box t{pos(rng), pos(rng), dim(rng), dim(rng)};
    const auto back = decode_offset(r, encode_offset(r, t));
    if (std::abs(back.x - t.x) > 1e-9 || std::abs(back.y - t.y) > 1e-9 ||
        std::abs(back.w - t.w) > 1e-9 || std::abs(back.h - t.h) > 1e-9) {
      return false;
    }
  }
  const BoxOffset d{0.3, -0.2, 0.1, 0.4};
  if (density_likelihood(d, d, 0.7) != 1.0) return false;
  const double sigma = 1.3;
  const BoxOffset shifted{0.3 + sigma, -0.2, 0.1, 0.4};
  return std::abs(density_likelihood(d, shifted, sigma) - std::exp(-0.5)) <
         1e-12;
}

// ---- criterion 9: split solver vs independent enumerator -----------------

SplitSolution enumerate_bitmask(const SplitProblem& p) {
  const int n = (int)p.videos.size();
  SplitSolution best;
  for (unsigned mask = (1u << n); mask-- > 0;) {
    std::vector<char> x(n, 0);
    int picked = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        x[i] = 1;
        ++picked;
      }
    }
    if (picked != p.n_test || !split_feasible(p, x)) continue;
    const double z = split_objective(p, x);
    if (!best.feasible || z < best.objective ||
        (z == best.objective && x > best.selection)) {
      best = {x, z, true};
    }
  }
  return best;
}

bool split_solver() {
  std::mt19937_64 rng(909);
  std::uniform_int_distribution<long> cnt(0, 6);
  for (int it = 0; it < 50; ++it) {
    const int n = 4 + (int)(rng() % 13);  // N <= 16
    SplitProblem p;
    for (int i = 0; i < n; ++i) {
      SplitVideo v;
      v.id = "v" + std::to_string(i);
      for (int j = 0; j < 3; ++j) v.interactions.push_back(cnt(rng));
      for (int j = 0; j < 4; ++j) v.objects.push_back(cnt(rng));
      for (int j = 0; j < 4; ++j) v.heatmap.push_back(cnt(rng));
      p.videos.push_back(v);
    }
    p.n_test = 1 + (int)(rng() % (n - 1));
    p.alpha = {0, 0, 0};
    p.gamma = 0;
    const auto exact = solve_exact(p);
    const auto oracle = enumerate_bitmask(p);
    if (exact.feasible != oracle.feasible) return false;
    if (!exact.feasible) continue;
    if (std::abs(exact.objective - oracle.objective) > 1e-9) return false;
    if (exact.selection != oracle.selection) return false;
    const auto heur = solve_heuristic(p, 7, 4000);
    if (!heur.feasible || heur.objective > 1.05 * exact.objective + 1e-9) {
      return false;
    }
  }
  return true;
}

// ---- criterion 10: taxonomy clustering and tree integrity ----------------

void collect(const ClassTree& t, std::vector<std::string>& out) {
  out.push_back(t.word);
  for (const auto& c : t.children) collect(c, out);
}

bool taxonomy_checks() {
  const auto mock = MockOntology::from_lines(
      {"apple\tfruit", "banana\tfruit", "hammer\ttool"});
  const auto clusters = cluster_classes({"apple", "banana", "hammer"}, mock);
  if (clusters.size() != 2 ||
      clusters[0] != std::vector<std::string>{"apple", "banana"} ||
      clusters[1] != std::vector<std::string>{"hammer"}) {
    return false;
  }

  std::mt19937_64 rng(1010);
  for (int it = 0; it < 100; ++it) {
    // Random rooted ontology: internal nodes chain to earlier nodes, leaf
    // words hang off random internals. Rootedness guarantees common parents.
    const int internals = 2 + (int)(rng() % 6);
    const int leaves = 2 + (int)(rng() % 8);
    MockOntology o;
    for (int i = 1; i < internals; ++i) {
      o.add_edge("n" + std::to_string(i), "n" + std::to_string(rng() % i));
    }
    std::vector<std::string> words;
    for (int i = 0; i < leaves; ++i) {
      const std::string w = "w" + std::to_string(i);
      o.add_edge(w, "n" + std::to_string(rng() % internals));
      words.push_back(w);
    }
    const auto cl = cluster_classes(words, o);
    const auto tree = build_taxonomy(cl, o);
    std::vector<std::string> flat;
    collect(tree, flat);
    // Tree values cannot contain cycles; duplicate words would be the only
    // way to lose the partition property.
    std::set<std::string> uniq(flat.begin(), flat.end());
    if (uniq.size() != flat.size()) return false;
    for (const auto& w : words) {
      if (std::count(flat.begin(), flat.end(), w) != 1) return false;
    }
  }
  return true;
}

// ---- criterion 11: end-to-end determinism and scale ----------------------

bool end_to_end() {
  const auto bench = gen_synthetic({.seed = 111,
                                    .n_videos = 100,
                                    .n_seconds = 100,
                                    .misses_per_video = 3,
                                    .fp_tracklets_per_video = 2});
  EvalConfig serial;
  serial.jobs = 1;
  EvalConfig parallel;
  parallel.jobs = std::max(2u, std::thread::hardware_concurrency());

  const auto t0 = std::chrono::steady_clock::now();
  const auto a = eval_all(bench.gt, bench.pred, serial);
  const auto b = eval_all(bench.gt, bench.pred, parallel);
  const std::chrono::duration<double> dt =
      std::chrono::steady_clock::now() - t0;
  if (dt.count() >= 10.0) return false;
  if (!(a == b)) return false;  // bitwise-equal reports

  EvalConfig cfg;
  const auto oracle = eval_all(bench.gt, bench.gt, cfg);
  return oracle.mota == 1.0 && oracle.idf1 == 1.0 &&
         oracle.interaction_map == MetricCells{1.0, 1.0, 1.0, 1.0} &&
         oracle.object_miou == MetricCells{1.0, 1.0, 1.0, 1.0};
}

}  // namespace

int main() {
  run(1, "tube IoU voxel oracle", tube_iou_oracle);
  run(2, "assignment permutation oracle", assignment_oracle);
  run(3, "tracking metric analytics", tracking_analytics);
  run(4, "step-wise monotonicity", stepwise_monotonicity);
  run(5, "score masking and splitting", masking_fuzz);
  run(6, "heatmap constants", heatmap_constants);
  run(7, "heatmap geometry oracle", heatmap_geometry);
  run(8, "offset round trip", offset_roundtrip);
  run(9, "split solver oracle", split_solver);
  run(10, "taxonomy integrity", taxonomy_checks);
  run(11, "end-to-end determinism and scale", end_to_end);
  if (failures > 0) {
    std::printf("%d criterion(s) failed\n", failures);
    return 1;
  }
  std::printf("all 11 criteria passed\n");
  return 0;
}
