#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sthoi/geometry.hpp"

namespace sthoi {

// Test-set selection: pick n_test videos minimizing the summed population
// variances of the interaction- and object-class count distributions, under
// per-class minimum counts and a top-half heatmap mass floor.
struct SplitVideo {
  std::string id;
  std::vector<long> interactions;  // class frequency vector, length N_a
  std::vector<long> objects;       // length N_o
  std::vector<long> heatmap;       // flattened counts, length N_h
};

struct SplitProblem {
  std::vector<SplitVideo> videos;
  int n_test = 0;
  std::vector<long> alpha;  // per-interaction minimum test-set counts
  long gamma = 0;           // minimum top-half heatmap mass

  void validate() const;
};

struct SplitSolution {
  std::vector<char> selection;  // length N, 0/1
  double objective = 0.0;
  bool feasible = false;
};

// z = Var(sum interactions) + Var(sum objects), population variances over the
// class dimensions.
double split_objective(const SplitProblem& p, const std::vector<char>& x);

bool split_feasible(const SplitProblem& p, const std::vector<char>& x);

// Global optimum by enumerating all C(N, n_test) selections; N <= 24.
// Tie-break: lexicographically smallest selected-index sequence.
SplitSolution solve_exact(const SplitProblem& p);

// Swap-based local search with simulated annealing, deterministic per seed.
// Greedy constraint-coverage start plus random repair; geometric cooling.
SplitSolution solve_heuristic(const SplitProblem& p, std::uint64_t seed,
                              int iterations);

// Problem file: {"videos":[{"id","interactions","objects","heatmap"}],
// "n_test", "alpha", "gamma"}.
SplitProblem load_split_problem(const std::string& path);
SplitProblem parse_split_problem(const std::string& json_text);
std::string solution_to_json(const SplitProblem& p, const SplitSolution& s);

}  // namespace sthoi
