#include "sthoi/split.hpp"

#include "sthoi/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

namespace sthoi {
namespace {

double population_variance(const std::vector<long>& v) {
  if (v.empty()) return 0.0;
  double mean = 0.0;
  for (long x : v) mean += static_cast<double>(x);
  mean /= v.size();
  double var = 0.0;
  for (long x : v) {
    const double d = x - mean;
    var += d * d;
  }
  return var / v.size();
}

struct Sums {
  std::vector<long> interactions, objects;
  long top_half = 0;

  explicit Sums(const SplitProblem& p)
      : interactions(p.videos.empty() ? 0 : p.videos[0].interactions.size(), 0),
        objects(p.videos.empty() ? 0 : p.videos[0].objects.size(), 0) {}

  void add(const SplitProblem& p, int i, int sign) {
    const auto& v = p.videos[i];
    for (std::size_t j = 0; j < interactions.size(); ++j)
      interactions[j] += sign * v.interactions[j];
    for (std::size_t j = 0; j < objects.size(); ++j)
      objects[j] += sign * v.objects[j];
    top_half += sign * top_half_mass(v);
  }

  static long top_half_mass(const SplitVideo& v) {
    const std::size_t k = (v.heatmap.size() + 1) / 2;  // top ceil(N_h/2) cells
    long s = 0;
    for (std::size_t j = 0; j < k; ++j) s += v.heatmap[j];
    return s;
  }

  double objective() const {
    return population_variance(interactions) + population_variance(objects);
  }

  bool feasible(const SplitProblem& p) const {
    for (std::size_t j = 0; j < p.alpha.size(); ++j)
      if (j < interactions.size() && interactions[j] < p.alpha[j]) return false;
    return top_half >= p.gamma;
  }
};

}  // namespace

void SplitProblem::validate() const {
  if (n_test < 0 || n_test > static_cast<int>(videos.size())) {
    throw invalid_input("split: n_test out of range");
  }
  for (std::size_t i = 1; i < videos.size(); ++i) {
    if (videos[i].interactions.size() != videos[0].interactions.size() ||
        videos[i].objects.size() != videos[0].objects.size() ||
        videos[i].heatmap.size() != videos[0].heatmap.size()) {
      throw invalid_input("split: inconsistent vector lengths across videos");
    }
  }
  for (const auto& v : videos) {
    for (long c : v.interactions)
      if (c < 0) throw invalid_input("split: negative count");
    for (long c : v.objects)
      if (c < 0) throw invalid_input("split: negative count");
    for (long c : v.heatmap)
      if (c < 0) throw invalid_input("split: negative count");
  }
}

double split_objective(const SplitProblem& p, const std::vector<char>& x) {
  if (x.size() != p.videos.size()) throw invalid_input("split_objective: length mismatch");
  Sums s(p);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) s.add(p, static_cast<int>(i), +1);
  return s.objective();
}

bool split_feasible(const SplitProblem& p, const std::vector<char>& x) {
  if (x.size() != p.videos.size()) throw invalid_input("split_feasible: length mismatch");
  int count = 0;
  Sums s(p);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i]) {
      ++count;
      s.add(p, static_cast<int>(i), +1);
    }
  }
  return count == p.n_test && s.feasible(p);
}

SplitSolution solve_exact(const SplitProblem& p) {
  p.validate();
  const int n = static_cast<int>(p.videos.size());
  if (n > 24) throw invalid_input("solve_exact: N exceeds the enumeration bound (24)");

  SplitSolution best;
  best.selection.assign(n, 0);
  double best_z = std::numeric_limits<double>::infinity();
  bool found = false;

  std::vector<int> chosen;
  Sums sums(p);
  // Lexicographic index enumeration; strict improvement keeps the first
  // (lexicographically smallest) optimum.
  auto recurse = [&](auto&& self, int start) -> void {
    if (static_cast<int>(chosen.size()) == p.n_test) {
      if (!sums.feasible(p)) return;
      const double z = sums.objective();
      if (!found || z < best_z) {
        found = true;
        best_z = z;
        std::fill(best.selection.begin(), best.selection.end(), 0);
        for (int i : chosen) best.selection[i] = 1;
      }
      return;
    }
    const int need = p.n_test - static_cast<int>(chosen.size());
    for (int i = start; i <= n - need; ++i) {
      chosen.push_back(i);
      sums.add(p, i, +1);
      self(self, i + 1);
      sums.add(p, i, -1);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0);

  best.feasible = found;
  best.objective = found ? best_z : 0.0;
  return best;
}

SplitSolution solve_heuristic(const SplitProblem& p, std::uint64_t seed,
                              int iterations) {
  p.validate();
  const int n = static_cast<int>(p.videos.size());

  auto violation = [&](const Sums& s) {
    double v = 0.0;
    for (std::size_t j = 0; j < p.alpha.size(); ++j)
      if (j < s.interactions.size() && s.interactions[j] < p.alpha[j])
        v += p.alpha[j] - s.interactions[j];
    if (s.top_half < p.gamma) v += p.gamma - s.top_half;
    return v;
  };

  // One restart: build a start selection, repair it toward feasibility,
  // anneal over feasibility-preserving swaps, then polish with steepest
  // descent until swap-locally optimal.
  auto attempt = [&](std::mt19937_64& rng, bool greedy_start,
                     bool polish_enabled) -> SplitSolution {
    std::vector<char> x(n, 0);
    Sums sums(p);
    if (greedy_start) {
      // Favor videos covering the unmet minima.
      for (int step = 0; step < p.n_test; ++step) {
        int pick = -1;
        double best_gain = -1.0;
        for (int i = 0; i < n; ++i) {
          if (x[i]) continue;
          double gain = 0.0;
          for (std::size_t j = 0; j < p.alpha.size(); ++j) {
            if (j >= sums.interactions.size()) break;
            const long deficit = p.alpha[j] - sums.interactions[j];
            if (deficit > 0)
              gain += std::min<long>(deficit, p.videos[i].interactions[j]);
          }
          const long hm_deficit = p.gamma - sums.top_half;
          if (hm_deficit > 0)
            gain += std::min<long>(hm_deficit, Sums::top_half_mass(p.videos[i]));
          if (gain > best_gain) {
            best_gain = gain;
            pick = i;
          }
        }
        x[pick] = 1;
        sums.add(p, pick, +1);
      }
    } else {
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      for (int k = 0; k < p.n_test; ++k) {
        x[order[k]] = 1;
        sums.add(p, order[k], +1);
      }
    }

    // Random repair: swap toward lower constraint violation.
    std::vector<int> sel, unsel;
    for (int i = 0; i < n; ++i) (x[i] ? sel : unsel).push_back(i);
    const int repair_budget = 200 * std::max(n, 1);
    for (int attempts = 0;
         violation(sums) > 0 && attempts < repair_budget &&
         !sel.empty() && !unsel.empty();
         ++attempts) {
      const int si = static_cast<int>(rng() % sel.size());
      const int ui = static_cast<int>(rng() % unsel.size());
      const double before = violation(sums);
      sums.add(p, sel[si], -1);
      sums.add(p, unsel[ui], +1);
      if (violation(sums) <= before) {
        x[sel[si]] = 0;
        x[unsel[ui]] = 1;
        std::swap(sel[si], unsel[ui]);
      } else {
        sums.add(p, sel[si], +1);
        sums.add(p, unsel[ui], -1);
      }
    }
    if (violation(sums) > 0) {
      return {};  // infeasible restart
    }

    SplitSolution best;
    best.selection = x;
    best.objective = sums.objective();
    best.feasible = true;

    // Feasibility-preserving annealing over single swaps.
    double cur_z = best.objective;
    double temp = 0.1 * (cur_z + 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int it = 0; it < iterations; ++it, temp *= 0.995) {
      if (sel.empty() || unsel.empty()) break;
      const int si = static_cast<int>(rng() % sel.size());
      const int ui = static_cast<int>(rng() % unsel.size());
      sums.add(p, sel[si], -1);
      sums.add(p, unsel[ui], +1);
      bool accept = false;
      if (sums.feasible(p)) {
        const double z = sums.objective();
        const double delta = z - cur_z;
        if (delta <= 0.0 ||
            unif(rng) < std::exp(-delta / std::max(temp, 1e-12))) {
          accept = true;
          cur_z = z;
        }
      }
      if (accept) {
        x[sel[si]] = 0;
        x[unsel[ui]] = 1;
        std::swap(sel[si], unsel[ui]);
        if (cur_z < best.objective) {
          best.objective = cur_z;
          best.selection = x;
        }
      } else {
        sums.add(p, sel[si], +1);
        sums.add(p, unsel[ui], -1);
      }
    }

    if (!polish_enabled) return best;

    // Steepest descent: apply the best improving feasible swap until none
    // is left.
    x = best.selection;
    Sums polish(p);
    for (int i = 0; i < n; ++i) {
      if (x[i]) polish.add(p, i, +1);
    }
    bool improved = true;
    while (improved) {
      improved = false;
      int best_out = -1, best_in = -1;
      double best_z = best.objective;
      for (int i = 0; i < n; ++i) {
        if (!x[i]) continue;
        for (int j = 0; j < n; ++j) {
          if (x[j]) continue;
          polish.add(p, i, -1);
          polish.add(p, j, +1);
          if (polish.feasible(p)) {
            const double z = polish.objective();
            if (z < best_z - 1e-12) {
              best_z = z;
              best_out = i;
              best_in = j;
            }
          }
          polish.add(p, i, +1);
          polish.add(p, j, -1);
        }
      }
      if (best_out >= 0) {
        x[best_out] = 0;
        x[best_in] = 1;
        polish.add(p, best_out, -1);
        polish.add(p, best_in, +1);
        best.selection = x;
        best.objective = best_z;
        improved = true;
      }
    }
    return best;
  };

  std::mt19937_64 master(seed);
  // iterations == 0 asks for the repaired greedy start verbatim.
  const int restarts = iterations == 0 ? 1 : 8;
  SplitSolution overall;
  bool any = false;
  for (int r = 0; r < restarts; ++r) {
    std::mt19937_64 rng(master());
    const auto s = attempt(rng, r == 0, iterations > 0);
    if (!s.feasible) continue;
    if (!any || s.objective < overall.objective - 1e-12) {
      overall = s;
      any = true;
    }
  }
  if (!any) {
    throw invalid_input("solve_heuristic: no feasible start found after repair");
  }
  return overall;
}

SplitProblem parse_split_problem(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("split problem parse error: ") + e.what());
  }
  SplitProblem p;
  try {
    for (const auto& v : j.at("videos")) {
      SplitVideo sv;
      sv.id = v.at("id").get<std::string>();
      sv.interactions = v.at("interactions").get<std::vector<long>>();
      sv.objects = v.at("objects").get<std::vector<long>>();
      sv.heatmap = v.at("heatmap").get<std::vector<long>>();
      p.videos.push_back(std::move(sv));
    }
    p.n_test = j.at("n_test").get<int>();
    p.alpha = j.value("alpha", std::vector<long>{});
    p.gamma = j.value("gamma", 0L);
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("split problem schema error: ") + e.what());
  }
  p.validate();
  return p;
}

SplitProblem load_split_problem(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw parse_error("cannot open: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_split_problem(ss.str());
}

std::string solution_to_json(const SplitProblem& p, const SplitSolution& s) {
  nlohmann::json j;
  j["feasible"] = s.feasible;
  j["objective"] = s.objective;
  j["selection"] = nlohmann::json::array();
  j["selected_videos"] = nlohmann::json::array();
  for (std::size_t i = 0; i < s.selection.size(); ++i) {
    j["selection"].push_back(static_cast<int>(s.selection[i]));
    if (s.selection[i]) j["selected_videos"].push_back(p.videos[i].id);
  }
  return j.dump(2);
}

}  // namespace sthoi
