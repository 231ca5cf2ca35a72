// simgen.hpp: synthetic race generator used as the verification oracle.
// Each lane is a constant-velocity box whose stroke phase follows
// s(t) = 0.5 + 0.5 * sin(2*pi*f*t + phase), clipped to [0, 1]; non-swimming
// (turn) windows pin s to 0.5. Output is fully deterministic given the seed.

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "swimtrack/core.hpp"

namespace swimtrack::simgen {

class InvalidConfig : public Error {
public:
  using Error::Error;
};

struct TurnWindow {
  double start_s = 0.0;
  double end_s = 0.0;
};

struct SimConfig {
  int n_lanes = 8;
  double duration_s = 60.0;
  double fps = 30.0;
  double swimmer_speed = 2.0;  // pixels per frame, lane-parallel
  // One entry per lane, or a single entry broadcast to every lane. Each
  // frequency must stay below the 3 Hz physical ceiling.
  std::vector<double> stroke_freq_hz = {1.0};
  double det_noise_px = 0.0;  // std of box-center jitter
  double miss_rate = 0.0;     // probability a detection is dropped
  double fp_rate = 0.0;       // expected false positives per frame
  double s_noise = 0.0;       // std of additive s-value noise
  std::vector<TurnWindow> turn_windows;
  std::uint64_t seed = 1;
};

// Lane band geometry; swimmers move horizontally at the vertical center of
// their lane.
inline constexpr double kLaneHeight = 90.0;
inline constexpr double kBoxWidth = 60.0;
inline constexpr double kBoxHeight = 40.0;
inline constexpr double kStartX = 80.0;

struct SimOutput {
  std::vector<Track> gt_tracks;                 // one per lane, ids 1..n
  std::vector<Detection> detections;            // jitter + drops + clutter
  std::vector<SValueSeries> gt_svalues;         // exact sinusoid
  std::vector<SValueSeries> noisy_svalues;      // with additive noise
  std::map<int, std::vector<double>> true_peaks;  // track id -> frames
};

SimOutput generate(const SimConfig& config);

}  // namespace swimtrack::simgen
