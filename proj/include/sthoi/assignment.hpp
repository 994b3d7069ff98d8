#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace sthoi {

// Dense cost matrix, row-major.
struct CostMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> cost;

  CostMatrix() = default;
  CostMatrix(std::size_t r, std::size_t c, double fill = 0.0)
      : rows(r), cols(c), cost(r * c, fill) {}
  double& at(std::size_t r, std::size_t c) { return cost[r * cols + c]; }
  double at(std::size_t r, std::size_t c) const { return cost[r * cols + c]; }
};

struct Assignment {
  // row_to_col[r] = matched column, or -1 when the row is unmatched
  // (unbalanced problems leave |rows - cols| entries unmatched).
  std::vector<int> row_to_col;
  std::vector<int> col_to_row;
  double total_cost = 0.0;

  std::vector<std::pair<int, int>> pairs() const;
};

// Minimal-cost one-to-one matching of min(rows, cols) pairs. Unbalanced
// matrices are padded internally with a large sentinel; padded pairs come
// back as unmatched. Ties are broken to the lexicographically smallest
// row_to_col vector. Throws invalid_input on non-finite costs.
Assignment solve_assignment(const CostMatrix& m);

// Optimal total cost only (no lexicographic refinement); used internally and
// by the brute-force comparisons in tests.
double assignment_cost(const CostMatrix& m);

}  // namespace sthoi
