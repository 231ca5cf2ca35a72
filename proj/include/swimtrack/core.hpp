// core.hpp: shared domain types and box geometry.
// Boxes are stored top-left + size; the centroid form (u, v, s, r) used by
// the motion model is derived on demand.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace swimtrack {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kNoLane = -1;

// Pose classes, in dataset order. Their integer values double as the
// on-disk class ids.
enum class PoseClass : int {
  OnBlocks = 0,
  Diving = 1,
  Swimming = 2,
  Underwater = 3,
  Turning = 4,
  Finishing = 5,
};

// Axis-aligned box, top-left corner + size, in pixels. w and h must be > 0.
struct BoundingBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double h = 0.0;

  bool valid() const { return w > 0.0 && h > 0.0; }
};

// Centroid form of a box: center (u, v), area s = w*h, aspect ratio r = w/h.
struct StateForm {
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  double r = 0.0;
};

struct Detection {
  long frame = 0;
  BoundingBox box;
  double confidence = 1.0;
  PoseClass class_label = PoseClass::Swimming;
  int lane = kNoLane;
};

enum class TrackSource {
  Tracker,
  GroundTruth,
};

struct TrackEntry {
  long frame = 0;
  BoundingBox box;
};

// Identity-stamped box sequence; entries strictly increasing in frame.
// The lane is reporting metadata (majority vote over matched detections,
// or the annotation lane for ground truth); kNoLane when unknown.
struct Track {
  int track_id = 0;
  std::vector<TrackEntry> entries;
  TrackSource source = TrackSource::Tracker;
  int lane = kNoLane;
};

struct SValueSample {
  long frame = 0;
  double s = 0.5;
  bool swimming = false;
};

// Per-track stroke-phase signal. s in [0, 1]; non-swimming frames carry 0.5.
struct SValueSeries {
  int track_id = 0;
  double fps = 30.0;
  std::vector<SValueSample> samples;
};

// Intersection-over-union of two valid boxes. Symmetric, in [0, 1].
double iou(const BoundingBox& a, const BoundingBox& b);

StateForm to_state_form(const BoundingBox& box);
BoundingBox from_state_form(const StateForm& state);

}  // namespace swimtrack
