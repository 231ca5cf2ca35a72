#include "swimtrack/tracker.hpp"

#include <algorithm>

#include "swimtrack/assoc.hpp"

namespace swimtrack {

Tracker::Tracker(TrackerConfig config) : config_(config) {}

std::vector<std::pair<int, BoundingBox>> Tracker::step(
    long frame, const std::vector<Detection>& detections) {
  if (last_frame_ && frame <= *last_frame_) {
    throw OutOfOrderFrame("frame " + std::to_string(frame) +
                          " does not follow " + std::to_string(*last_frame_));
  }
  last_frame_ = frame;
  ++steps_;

  std::vector<BoundingBox> predicted;
  predicted.reserve(live_.size());
  for (LiveTrack& track : live_) {
    if (track.frames_since_update > 0) track.hit_streak = 0;
    track.kalman_state = kalman::predict(track.kalman_state, config_.kalman);
    ++track.frames_since_update;
    predicted.push_back(kalman::state_box(track.kalman_state));
  }

  std::vector<BoundingBox> detected;
  detected.reserve(detections.size());
  for (const Detection& d : detections) detected.push_back(d.box);
  const assoc::AssignmentResult assignment =
      assoc::associate(predicted, detected, config_.iou_min);

  for (const auto& [ti, dj] : assignment.matches) {
    LiveTrack& track = live_[ti];
    track.kalman_state =
        kalman::update(track.kalman_state, detections[dj].box, config_.kalman);
    track.kalman_state.frame = frame;
    track.frames_since_update = 0;
    ++track.hit_streak;
    if (track.hit_streak >= config_.min_hits) track.confirmed = true;
    if (detections[dj].lane != kNoLane) ++track.lane_votes[detections[dj].lane];
  }

  for (int dj : assignment.unmatched_detections) {
    LiveTrack track;
    track.track_id = next_id_++;
    track.kalman_state =
        kalman::init(detections[dj].box, config_.kalman, frame);
    track.hit_streak = 1;
    if (track.hit_streak >= config_.min_hits) track.confirmed = true;
    if (detections[dj].lane != kNoLane) ++track.lane_votes[detections[dj].lane];
    live_.push_back(std::move(track));
  }

  // Emit updated tracks that are confirmed, with the usual grace period for
  // the first min_hits frames of the stream.
  std::vector<std::pair<int, BoundingBox>> emitted;
  for (LiveTrack& track : live_) {
    if (track.frames_since_update != 0) continue;
    if (!track.confirmed && steps_ > config_.min_hits) continue;
    const BoundingBox box = kalman::state_box(track.kalman_state);
    track.history.push_back(TrackEntry{frame, box});
    emitted.emplace_back(track.track_id, box);
  }

  for (auto it = live_.begin(); it != live_.end();) {
    if (it->frames_since_update > config_.max_age) {
      retire(std::move(*it));
      it = live_.erase(it);
    } else {
      ++it;
    }
  }
  return emitted;
}

void Tracker::retire(LiveTrack&& track) {
  if (track.history.empty()) return;
  Track out;
  out.track_id = track.track_id;
  out.entries = std::move(track.history);
  out.source = TrackSource::Tracker;
  int best_votes = 0;
  for (const auto& [lane, votes] : track.lane_votes) {
    if (votes > best_votes) {
      best_votes = votes;
      out.lane = lane;
    }
  }
  retired_.push_back(std::move(out));
}

std::vector<Track> Tracker::finalize() const {
  std::vector<Track> tracks = retired_;
  for (const LiveTrack& track : live_) {
    if (track.history.empty()) continue;
    Track out;
    out.track_id = track.track_id;
    out.entries = track.history;
    out.source = TrackSource::Tracker;
    int best_votes = 0;
    for (const auto& [lane, votes] : track.lane_votes) {
      if (votes > best_votes) {
        best_votes = votes;
        out.lane = lane;
      }
    }
    tracks.push_back(std::move(out));
  }
  std::sort(tracks.begin(), tracks.end(),
            [](const Track& a, const Track& b) {
              return a.track_id < b.track_id;
            });
  return tracks;
}

std::vector<TrackEntry> crop_rects(const Track& track, double pad,
                                   std::optional<FrameBounds> bounds) {
  std::vector<TrackEntry> rects;
  rects.reserve(track.entries.size());
  for (const TrackEntry& entry : track.entries) {
    BoundingBox box{entry.box.x - pad, entry.box.y - pad,
                    entry.box.w + 2.0 * pad, entry.box.h + 2.0 * pad};
    if (bounds) {
      const double x2 = std::min(box.x + box.w, bounds->width);
      const double y2 = std::min(box.y + box.h, bounds->height);
      box.x = std::max(box.x, 0.0);
      box.y = std::max(box.y, 0.0);
      box.w = x2 - box.x;
      box.h = y2 - box.y;
    }
    rects.push_back(TrackEntry{entry.frame, box});
  }
  return rects;
}

}  // namespace swimtrack
