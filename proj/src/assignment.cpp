#include "sthoi/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sthoi/geometry.hpp"

namespace sthoi {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Hungarian algorithm with potentials on a square matrix, O(n^3).
// Returns col -> row matching and the optimal total cost.
double hungarian_square(const std::vector<double>& a, int n,
                        std::vector<int>* col_to_row) {
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = a[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  double total = 0.0;
  if (col_to_row) col_to_row->assign(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (col_to_row) (*col_to_row)[j - 1] = p[j] - 1;
    total += a[(p[j] - 1) * n + (j - 1)];
  }
  return total;
}

struct Padded {
  int n = 0;           // square size
  int rows = 0, cols = 0;
  std::vector<double> a;  // n x n with sentinel padding
};

Padded pad_square(const CostMatrix& m) {
  double mx = 0.0;
  for (double c : m.cost) {
    if (!std::isfinite(c)) throw invalid_input("assignment: non-finite cost");
    mx = std::max(mx, std::abs(c));
  }
  const double sentinel = 10.0 * mx + 1.0;
  Padded p;
  p.rows = static_cast<int>(m.rows);
  p.cols = static_cast<int>(m.cols);
  p.n = std::max(p.rows, p.cols);
  p.a.assign(static_cast<std::size_t>(p.n) * p.n, sentinel);
  for (int r = 0; r < p.rows; ++r)
    for (int c = 0; c < p.cols; ++c)
      p.a[r * p.n + c] = m.at(r, c);
  return p;
}

// Optimal cost of the square matrix restricted to rows >= first_row, skipping
// the columns marked used.
double suffix_cost(const Padded& p, int first_row,
                   const std::vector<char>& col_used) {
  const int k = p.n - first_row;
  if (k == 0) return 0.0;
  std::vector<double> sub(static_cast<std::size_t>(k) * k);
  std::vector<int> cols;
  cols.reserve(k);
  for (int c = 0; c < p.n; ++c)
    if (!col_used[c]) cols.push_back(c);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c)
      sub[r * k + c] = p.a[(first_row + r) * p.n + cols[c]];
  return hungarian_square(sub, k, nullptr);
}

}  // namespace

std::vector<std::pair<int, int>> Assignment::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int r = 0; r < static_cast<int>(row_to_col.size()); ++r)
    if (row_to_col[r] >= 0) out.emplace_back(r, row_to_col[r]);
  return out;
}

double assignment_cost(const CostMatrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0.0;
  const Padded p = pad_square(m);
  std::vector<int> col_to_row;
  hungarian_square(p.a, p.n, &col_to_row);
  double total = 0.0;
  for (int c = 0; c < p.cols; ++c) {
    const int r = col_to_row[c];
    if (r >= 0 && r < p.rows) total += m.at(r, c);
  }
  return total;
}

Assignment solve_assignment(const CostMatrix& m) {
  Assignment out;
  out.row_to_col.assign(m.rows, -1);
  out.col_to_row.assign(m.cols, -1);
  if (m.rows == 0 || m.cols == 0) return out;

  const Padded p = pad_square(m);
  std::vector<char> col_used(p.n, 0);
  const double optimum = suffix_cost(p, 0, col_used);
  const double tol = 1e-9 * std::max(1.0, std::abs(optimum));

  // Fix rows top-down, choosing for each the smallest column that keeps the
  // remaining problem optimal; yields the lexicographically smallest
  // minimal-cost matching.
  double fixed = 0.0;
  for (int r = 0; r < p.n; ++r) {
    int chosen = -1;
    for (int c = 0; c < p.n; ++c) {
      if (col_used[c]) continue;
      col_used[c] = 1;
      const double rest = suffix_cost(p, r + 1, col_used);
      const double total = fixed + p.a[r * p.n + c] + rest;
      if (std::abs(total - optimum) <= tol) {
        chosen = c;
        break;
      }
      col_used[c] = 0;
    }
    if (chosen < 0) {
      // Tolerance fallback: take the column with the best completion.
      double best = kInf;
      for (int c = 0; c < p.n; ++c) {
        if (col_used[c]) continue;
        col_used[c] = 1;
        const double total = fixed + p.a[r * p.n + c] + suffix_cost(p, r + 1, col_used);
        col_used[c] = 0;
        if (total < best) {
          best = total;
          chosen = c;
        }
      }
      col_used[chosen] = 1;
    }
    fixed += p.a[r * p.n + chosen];
    if (r < p.rows && chosen < p.cols) {
      out.row_to_col[r] = chosen;
      out.col_to_row[chosen] = r;
      out.total_cost += m.at(r, chosen);
    }
  }
  return out;
}

}  // namespace sthoi
