#include "swimtrack/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "swimtrack/assoc.hpp"

namespace swimtrack::metrics {
namespace {

// Forbidden cell in the identity-assignment matrix. Must dominate any
// feasible pairing cost (bounded by the total number of boxes) while staying
// finite for the solver.
constexpr double kForbidden = 1e9;

struct FrameBox {
  int id;
  const BoundingBox* box;
};

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace

PeakMatchResult match_peaks(const std::vector<double>& predicted,
                            const std::vector<double>& truth, double tol) {
  PeakMatchResult result;
  if (!predicted.empty() && !truth.empty()) {
    Eigen::MatrixXd cost(predicted.size(), truth.size());
    for (int i = 0; i < static_cast<int>(predicted.size()); ++i) {
      for (int j = 0; j < static_cast<int>(truth.size()); ++j) {
        const double d = std::abs(predicted[i] - truth[j]);
        cost(i, j) = d <= tol ? d : assoc::kPadCost;
      }
    }
    for (const auto& [i, j] : assoc::hungarian(cost)) {
      if (std::abs(predicted[i] - truth[j]) <= tol) {
        result.pairs.emplace_back(i, j);
      }
    }
  }
  std::vector<char> pred_used(predicted.size(), 0), truth_used(truth.size(), 0);
  for (const auto& [i, j] : result.pairs) {
    pred_used[i] = 1;
    truth_used[j] = 1;
  }
  for (int i = 0; i < static_cast<int>(predicted.size()); ++i) {
    if (!pred_used[i]) result.unmatched_predicted.push_back(i);
  }
  for (int j = 0; j < static_cast<int>(truth.size()); ++j) {
    if (!truth_used[j]) result.unmatched_truth.push_back(j);
  }
  return result;
}

StrokeReport stroke_report(const std::vector<double>& predicted_peaks,
                           const std::vector<double>& truth_peaks,
                           const std::vector<double>& predicted_svalues,
                           const std::vector<double>& truth_svalues) {
  if (predicted_peaks.empty() || truth_peaks.empty()) {
    throw EmptyPeaks("stroke_report: empty peak list");
  }
  if (predicted_svalues.size() != truth_svalues.size()) {
    throw Error("stroke_report: s-value sequences differ in length (" +
                std::to_string(predicted_svalues.size()) + " vs " +
                std::to_string(truth_svalues.size()) + ")");
  }

  StrokeReport report;
  const PeakMatchResult match = match_peaks(predicted_peaks, truth_peaks, 3.0);
  report.tp = static_cast<long>(match.pairs.size());
  report.fp = static_cast<long>(match.unmatched_predicted.size());
  report.fn = static_cast<long>(match.unmatched_truth.size());
  const double precision =
      report.tp + report.fp > 0
          ? static_cast<double>(report.tp) / (report.tp + report.fp)
          : 0.0;
  const double recall =
      report.tp + report.fn > 0
          ? static_cast<double>(report.tp) / (report.tp + report.fn)
          : 0.0;
  report.f1 = precision + recall > 0.0
                  ? 2.0 * precision * recall / (precision + recall)
                  : 0.0;

  // Distance from each predicted peak to the nearest truth peak (ties go to
  // the earlier truth peak; the distance is the same either way).
  std::vector<double> distances;
  distances.reserve(predicted_peaks.size());
  for (double p : predicted_peaks) {
    double best = std::numeric_limits<double>::infinity();
    for (double t : truth_peaks) best = std::min(best, std::abs(p - t));
    distances.push_back(best);
  }
  report.asd = mean(distances);
  double var = 0.0;
  for (double d : distances) var += (d - report.asd) * (d - report.asd);
  report.sdstd = std::sqrt(var / static_cast<double>(distances.size()));

  double abs_diff = 0.0;
  for (size_t k = 0; k < predicted_svalues.size(); ++k) {
    abs_diff += std::abs(predicted_svalues[k] - truth_svalues[k]);
  }
  report.delta = predicted_svalues.empty()
                     ? 0.0
                     : abs_diff / static_cast<double>(predicted_svalues.size());
  return report;
}

std::vector<Track> interpolate_ground_truth(
    const std::vector<GroundTruthAnnotation>& sparse) {
  std::map<int, std::vector<std::pair<long, BoundingBox>>> by_lane;
  for (const auto& a : sparse) by_lane[a.lane].emplace_back(a.frame, a.box);

  std::vector<Track> tracks;
  int next_id = 1;
  for (auto& [lane, points] : by_lane) {
    std::stable_sort(points.begin(), points.end(),
                     [](const auto& a, const auto& b) {
                       return a.first < b.first;
                     });
    for (size_t k = 1; k < points.size(); ++k) {
      if (points[k].first == points[k - 1].first) {
        throw DuplicateFrame("lane " + std::to_string(lane) +
                             ": duplicate annotation at frame " +
                             std::to_string(points[k].first));
      }
    }
    Track track;
    track.track_id = next_id++;
    track.source = TrackSource::GroundTruth;
    track.lane = lane;
    for (size_t k = 0; k + 1 < points.size(); ++k) {
      const auto& [f0, b0] = points[k];
      const auto& [f1, b1] = points[k + 1];
      for (long f = f0; f < f1; ++f) {
        const double t = static_cast<double>(f - f0) /
                         static_cast<double>(f1 - f0);
        track.entries.push_back(TrackEntry{
            f, BoundingBox{b0.x + t * (b1.x - b0.x), b0.y + t * (b1.y - b0.y),
                           b0.w + t * (b1.w - b0.w),
                           b0.h + t * (b1.h - b0.h)}});
      }
    }
    track.entries.push_back(
        TrackEntry{points.back().first, points.back().second});
    tracks.push_back(std::move(track));
  }
  return tracks;
}

MotReport mot_report(const std::vector<Track>& hypotheses,
                     const std::vector<Track>& ground_truth,
                     double iou_match) {
  // Frame-indexed views.
  std::map<long, std::vector<FrameBox>> gt_frames, hyp_frames;
  long total_gt = 0, total_hyp = 0;
  for (const Track& t : ground_truth) {
    for (const TrackEntry& e : t.entries) {
      gt_frames[e.frame].push_back(FrameBox{t.track_id, &e.box});
      ++total_gt;
    }
  }
  for (const Track& t : hypotheses) {
    for (const TrackEntry& e : t.entries) {
      hyp_frames[e.frame].push_back(FrameBox{t.track_id, &e.box});
      ++total_hyp;
    }
  }
  if (total_gt > 0 && total_hyp > 0) {
    if (hyp_frames.begin()->first < gt_frames.begin()->first ||
        hyp_frames.rbegin()->first > gt_frames.rbegin()->first) {
      throw FrameRangeMismatch(
          "hypothesis frames extend outside the ground-truth frame range");
    }
  }

  MotReport report;
  report.gt = static_cast<int>(ground_truth.size());

  double motp_sum = 0.0;
  long n_matches = 0;
  std::map<int, int> last_match;          // gt id -> most recent hyp id
  std::map<int, long> covered_frames;     // gt id -> frames matched
  std::map<std::pair<int, int>, long> overlap;  // (gt id, hyp id) -> frames

  for (const auto& [frame, gts] : gt_frames) {
    auto hyp_it = hyp_frames.find(frame);
    static const std::vector<FrameBox> kEmpty;
    const auto& hyps = hyp_it == hyp_frames.end() ? kEmpty : hyp_it->second;

    std::vector<char> gt_done(gts.size(), 0), hyp_done(hyps.size(), 0);
    std::vector<std::pair<int, int>> frame_pairs;  // indices into gts/hyps

    // Carry previous matches that still overlap.
    for (size_t gi = 0; gi < gts.size(); ++gi) {
      auto prev = last_match.find(gts[gi].id);
      if (prev == last_match.end()) continue;
      for (size_t hj = 0; hj < hyps.size(); ++hj) {
        if (hyp_done[hj] || hyps[hj].id != prev->second) continue;
        if (iou(*gts[gi].box, *hyps[hj].box) >= iou_match) {
          frame_pairs.emplace_back(gi, hj);
          gt_done[gi] = 1;
          hyp_done[hj] = 1;
        }
        break;
      }
    }

    // Assign the rest by IoU.
    std::vector<int> free_gt, free_hyp;
    for (size_t gi = 0; gi < gts.size(); ++gi) {
      if (!gt_done[gi]) free_gt.push_back(static_cast<int>(gi));
    }
    for (size_t hj = 0; hj < hyps.size(); ++hj) {
      if (!hyp_done[hj]) free_hyp.push_back(static_cast<int>(hj));
    }
    if (!free_gt.empty() && !free_hyp.empty()) {
      Eigen::MatrixXd cost(free_gt.size(), free_hyp.size());
      for (size_t a = 0; a < free_gt.size(); ++a) {
        for (size_t b = 0; b < free_hyp.size(); ++b) {
          cost(a, b) =
              1.0 - iou(*gts[free_gt[a]].box, *hyps[free_hyp[b]].box);
        }
      }
      for (const auto& [a, b] : assoc::hungarian(cost)) {
        const int gi = free_gt[a], hj = free_hyp[b];
        if (iou(*gts[gi].box, *hyps[hj].box) >= iou_match) {
          frame_pairs.emplace_back(gi, hj);
          gt_done[gi] = 1;
          hyp_done[hj] = 1;
        }
      }
    }

    for (const auto& [gi, hj] : frame_pairs) {
      const int gt_id = gts[gi].id, hyp_id = hyps[hj].id;
      auto prev = last_match.find(gt_id);
      if (prev != last_match.end() && prev->second != hyp_id) ++report.idsw;
      last_match[gt_id] = hyp_id;
      motp_sum += iou(*gts[gi].box, *hyps[hj].box);
      ++n_matches;
      ++covered_frames[gt_id];
    }
    report.fn += static_cast<long>(gts.size()) -
                 static_cast<long>(frame_pairs.size());
    report.fp += static_cast<long>(hyps.size()) -
                 static_cast<long>(frame_pairs.size());

    // Identity overlap counts (spatially matched, identity-agnostic pairs
    // are not what ID metrics want: they count frames where a (gt, hyp)
    // pairing would be consistent, i.e. both present and overlapping).
    for (const FrameBox& g : gts) {
      for (const FrameBox& h : hyps) {
        if (iou(*g.box, *h.box) >= iou_match) {
          ++overlap[{g.id, h.id}];
        }
      }
    }
  }
  // Hypothesis boxes on frames with no ground truth at all are plain FPs.
  for (const auto& [frame, hyps] : hyp_frames) {
    if (!gt_frames.count(frame)) report.fp += static_cast<long>(hyps.size());
  }

  report.mota_raw =
      total_gt > 0
          ? 100.0 * (1.0 - static_cast<double>(report.fn + report.fp +
                                               report.idsw) /
                               static_cast<double>(total_gt))
          : (report.fp + report.idsw == 0 ? 100.0 : 0.0);
  report.mota = std::max(0.0, report.mota_raw);
  report.motp = n_matches > 0 ? 100.0 * motp_sum /
                                    static_cast<double>(n_matches)
                              : 0.0;

  // Global identity assignment over (gt + hyp) x (hyp + gt) with dummy
  // rows/columns for unmatched trajectories.
  const int ng = static_cast<int>(ground_truth.size());
  const int nh = static_cast<int>(hypotheses.size());
  long idtp = 0;
  if (ng + nh > 0) {
    const int n = ng + nh;
    Eigen::MatrixXd cost = Eigen::MatrixXd::Constant(n, n, kForbidden);
    std::vector<long> gt_len(ng), hyp_len(nh);
    for (int g = 0; g < ng; ++g) {
      gt_len[g] = static_cast<long>(ground_truth[g].entries.size());
    }
    for (int h = 0; h < nh; ++h) {
      hyp_len[h] = static_cast<long>(hypotheses[h].entries.size());
    }
    for (int g = 0; g < ng; ++g) {
      for (int h = 0; h < nh; ++h) {
        auto it = overlap.find({ground_truth[g].track_id,
                                hypotheses[h].track_id});
        const long ov = it == overlap.end() ? 0 : it->second;
        cost(g, h) = static_cast<double>(gt_len[g] + hyp_len[h] - 2 * ov);
      }
      cost(g, nh + g) = static_cast<double>(gt_len[g]);
    }
    for (int h = 0; h < nh; ++h) {
      cost(ng + h, h) = static_cast<double>(hyp_len[h]);
    }
    cost.bottomRightCorner(nh, ng).setZero();
    for (const auto& [r, c] : assoc::hungarian(cost)) {
      if (r < ng && c < nh) {
        auto it = overlap.find({ground_truth[r].track_id,
                                hypotheses[c].track_id});
        if (it != overlap.end()) idtp += it->second;
      }
    }
  }
  report.idp = total_hyp > 0
                   ? 100.0 * static_cast<double>(idtp) /
                         static_cast<double>(total_hyp)
                   : 0.0;
  report.idr = total_gt > 0 ? 100.0 * static_cast<double>(idtp) /
                                  static_cast<double>(total_gt)
                            : 0.0;
  report.idf1 = total_gt + total_hyp > 0
                    ? 100.0 * 2.0 * static_cast<double>(idtp) /
                          static_cast<double>(total_gt + total_hyp)
                    : 0.0;

  for (const Track& t : ground_truth) {
    const long len = static_cast<long>(t.entries.size());
    const auto it = covered_frames.find(t.track_id);
    const double coverage =
        len > 0 && it != covered_frames.end()
            ? static_cast<double>(it->second) / static_cast<double>(len)
            : 0.0;
    if (coverage >= 0.8) {
      ++report.mt;
    } else if (coverage <= 0.2) {
      ++report.ml;
    } else {
      ++report.pt;
    }
  }
  return report;
}

}  // namespace swimtrack::metrics
