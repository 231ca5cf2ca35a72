// tracker.hpp: SORT-style track lifecycle over a detection stream.
// Per frame: predict every live track, associate predictions with the
// frame's detections by IoU, update matches, spawn tracks for leftover
// detections, retire tracks unseen for more than max_age frames.

#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "swimtrack/core.hpp"
#include "swimtrack/kalman.hpp"

namespace swimtrack {

class OutOfOrderFrame : public Error {
public:
  using Error::Error;
};

struct TrackerConfig {
  double iou_min = 0.3;
  int max_age = 10;
  int min_hits = 3;
  kalman::KalmanConfig kalman;
};

struct LiveTrack {
  int track_id = 0;
  kalman::KalmanTrackState kalman_state;
  int hit_streak = 0;
  int frames_since_update = 0;
  bool confirmed = false;  // reached min_hits consecutive matches once
  std::vector<TrackEntry> history;  // emitted entries only
  std::map<int, int> lane_votes;
};

class Tracker {
public:
  explicit Tracker(TrackerConfig config = {});

  // Advances one frame and returns (track_id, box) for every track emitted
  // at this frame. Emitted boxes are the post-update state estimates. Frames
  // must be presented in strictly increasing order.
  std::vector<std::pair<int, BoundingBox>> step(
      long frame, const std::vector<Detection>& detections);

  // All tracks that ever emitted a box, with their emitted histories,
  // ordered by track id. Lanes are filled by majority vote.
  std::vector<Track> finalize() const;

  const TrackerConfig& config() const { return config_; }

private:
  TrackerConfig config_;
  std::vector<LiveTrack> live_;
  std::vector<Track> retired_;
  int next_id_ = 1;
  long steps_ = 0;
  std::optional<long> last_frame_;

  void retire(LiveTrack&& track);
};

struct FrameBounds {
  double width = 0.0;
  double height = 0.0;
};

// Per-frame crop rectangles for cutting a sub-video: each box grown by pad
// on all sides, clamped to the frame bounds when supplied.
std::vector<TrackEntry> crop_rects(const Track& track, double pad,
                                   std::optional<FrameBounds> bounds = {});

}  // namespace swimtrack
