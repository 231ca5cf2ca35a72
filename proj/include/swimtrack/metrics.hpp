// metrics.hpp: stroke-position metrics (F1 / ASD / SDSTD / delta), CLEAR-MOT
// and identity tracking metrics, and ground-truth interpolation.

#pragma once

#include <utility>
#include <vector>

#include "swimtrack/core.hpp"

namespace swimtrack::metrics {

class EmptyPeaks : public Error {
public:
  using Error::Error;
};
class DuplicateFrame : public Error {
public:
  using Error::Error;
};
class FrameRangeMismatch : public Error {
public:
  using Error::Error;
};

struct PeakMatchResult {
  std::vector<std::pair<int, int>> pairs;  // (predicted_index, truth_index)
  std::vector<int> unmatched_predicted;
  std::vector<int> unmatched_truth;
};

// One-to-one peak matching maximizing match count, ties broken by minimum
// total distance; a pair only matches within tol frames.
PeakMatchResult match_peaks(const std::vector<double>& predicted,
                            const std::vector<double>& truth,
                            double tol = 3.0);

struct StrokeReport {
  double f1 = 0.0;     // peak matching F1 at a 3-frame tolerance
  double asd = 0.0;    // mean |predicted peak -> nearest truth peak|, frames
  double sdstd = 0.0;  // standard deviation of those distances, frames
  double delta = 0.0;  // mean |predicted s - truth s| over aligned frames
  long tp = 0;
  long fp = 0;
  long fn = 0;
};

// Peak lists must be sorted; s-value vectors must be aligned frame-by-frame.
// Throws EmptyPeaks if either peak list is empty.
StrokeReport stroke_report(const std::vector<double>& predicted_peaks,
                           const std::vector<double>& truth_peaks,
                           const std::vector<double>& predicted_svalues,
                           const std::vector<double>& truth_svalues);

struct GroundTruthAnnotation {
  long frame = 0;
  int lane = 0;
  BoundingBox box;
};

// One track per lane, boxes linearly interpolated component-wise between
// consecutive annotated frames. No extrapolation beyond the first / last
// annotation. Track ids are assigned 1..N in ascending lane order.
std::vector<Track> interpolate_ground_truth(
    const std::vector<GroundTruthAnnotation>& sparse);

struct MotReport {
  double mota = 0.0;      // percentage, floored at 0 for display
  double mota_raw = 0.0;  // unfloored signed percentage
  double motp = 0.0;      // mean IoU over matched pairs, percentage
  double idf1 = 0.0;
  double idp = 0.0;
  double idr = 0.0;
  int gt = 0;
  int mt = 0;
  int pt = 0;
  int ml = 0;
  long fp = 0;
  long fn = 0;
  long idsw = 0;
};

// CLEAR-MOT accumulation with per-frame IoU matching (previous matches are
// carried while still above iou_match), plus identity metrics from a global
// truth-to-hypothesis assignment. MT >= 80% coverage, ML <= 20%.
MotReport mot_report(const std::vector<Track>& hypotheses,
                     const std::vector<Track>& ground_truth,
                     double iou_match = 0.5);

}  // namespace swimtrack::metrics
