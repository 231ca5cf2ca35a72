#include "swimtrack/assoc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace swimtrack::assoc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Above this size the lexicographic tie-break refinement (an extra
// O(n^2) solver calls) is skipped and the raw solver assignment is kept.
constexpr int kLexRefineLimit = 64;

// Shortest-augmenting-path solver (Jonker-Volgenant flavour) on a square
// matrix; returns the column assigned to each row.
std::vector<int> solve_square(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
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
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
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
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j]) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

// Optimal total summed over chosen cells in ascending row order, so that
// equal candidates compare bit-identically during tie-breaking.
double optimal_total(const Eigen::MatrixXd& cost) {
  if (cost.rows() == 0) return 0.0;
  const auto row_to_col = solve_square(cost);
  double total = 0.0;
  for (int i = 0; i < cost.rows(); ++i) total += cost(i, row_to_col[i]);
  return total;
}

// Re-solves row by row, always taking the smallest column index that still
// completes an optimal assignment. Costs the solver once per (row, column).
std::vector<int> lexicographic_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<int> cols(n);
  std::iota(cols.begin(), cols.end(), 0);
  std::vector<int> row_to_col(n, -1);
  for (int i = 0; i < n; ++i) {
    const int m = n - i - 1;  // rows below i
    double best = kInf;
    int best_pos = -1;
    Eigen::MatrixXd sub(m, m);
    for (int pos = 0; pos < static_cast<int>(cols.size()); ++pos) {
      for (int r = 0; r < m; ++r) {
        int cc = 0;
        for (int p = 0; p < static_cast<int>(cols.size()); ++p) {
          if (p == pos) continue;
          sub(r, cc++) = cost(i + 1 + r, cols[p]);
        }
      }
      const double t = cost(i, cols[pos]) + optimal_total(sub);
      if (t < best) {
        best = t;
        best_pos = pos;
      }
    }
    row_to_col[i] = cols[best_pos];
    cols.erase(cols.begin() + best_pos);
  }
  return row_to_col;
}

}  // namespace

std::vector<std::pair<int, int>> hungarian(const Eigen::MatrixXd& cost) {
  const int rows = static_cast<int>(cost.rows());
  const int cols = static_cast<int>(cost.cols());
  if (rows == 0 || cols == 0) return {};
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (!std::isfinite(cost(i, j))) {
        throw InvalidMatrix("hungarian: non-finite cost at (" +
                            std::to_string(i) + ", " + std::to_string(j) +
                            ")");
      }
    }
  }

  const int n = std::max(rows, cols);
  Eigen::MatrixXd padded = Eigen::MatrixXd::Constant(n, n, kPadCost);
  padded.topLeftCorner(rows, cols) = cost;

  const std::vector<int> row_to_col =
      n <= kLexRefineLimit ? lexicographic_assignment(padded)
                           : solve_square(padded);

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(std::min(rows, cols));
  for (int i = 0; i < rows; ++i) {
    if (row_to_col[i] < cols) pairs.emplace_back(i, row_to_col[i]);
  }
  return pairs;
}

AssignmentResult associate(const std::vector<BoundingBox>& predicted,
                           const std::vector<BoundingBox>& detected,
                           double iou_min) {
  AssignmentResult result;
  Eigen::MatrixXd cost(predicted.size(), detected.size());
  for (int i = 0; i < static_cast<int>(predicted.size()); ++i) {
    for (int j = 0; j < static_cast<int>(detected.size()); ++j) {
      cost(i, j) = 1.0 - iou(predicted[i], detected[j]);
    }
  }

  std::vector<char> track_used(predicted.size(), 0);
  std::vector<char> det_used(detected.size(), 0);
  for (const auto& [ti, dj] : hungarian(cost)) {
    if (iou(predicted[ti], detected[dj]) < iou_min) continue;
    result.matches.emplace_back(ti, dj);
    track_used[ti] = 1;
    det_used[dj] = 1;
  }
  for (int i = 0; i < static_cast<int>(predicted.size()); ++i) {
    if (!track_used[i]) result.unmatched_tracks.push_back(i);
  }
  for (int j = 0; j < static_cast<int>(detected.size()); ++j) {
    if (!det_used[j]) result.unmatched_detections.push_back(j);
  }
  return result;
}

}  // namespace swimtrack::assoc
