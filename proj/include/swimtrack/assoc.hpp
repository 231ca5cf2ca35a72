// assoc.hpp: minimum-cost assignment and IoU-gated detection association.

#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "swimtrack/core.hpp"

namespace swimtrack::assoc {

class InvalidMatrix : public Error {
public:
  using Error::Error;
};

// Sentinel cost used to pad rectangular matrices to square, strictly larger
// than any cost arising from IoU (max 1.0) or gated peak matching.
inline constexpr double kPadCost = 1e6;

// Minimum-total-cost one-to-one assignment. Rectangular matrices are padded
// internally; exactly min(rows, cols) pairs are returned, sorted by row.
// When several assignments tie on total cost the lexicographically smallest
// (row, col) sequence is preferred. Throws InvalidMatrix on non-finite costs.
std::vector<std::pair<int, int>> hungarian(const Eigen::MatrixXd& cost);

struct AssignmentResult {
  std::vector<std::pair<int, int>> matches;  // (track_index, detection_index)
  std::vector<int> unmatched_tracks;
  std::vector<int> unmatched_detections;
};

// Assigns detections to predicted boxes by minimizing 1 - IoU, then demotes
// matches below iou_min to unmatched on both sides.
AssignmentResult associate(const std::vector<BoundingBox>& predicted,
                           const std::vector<BoundingBox>& detected,
                           double iou_min = 0.3);

}  // namespace swimtrack::assoc
