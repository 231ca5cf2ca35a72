#include "swimtrack/simgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace swimtrack::simgen {
namespace {

constexpr double kPi = std::numbers::pi;

// Distributions are hand-rolled on top of the (standardized, portable)
// mt19937_64 stream so generated fixtures are bit-stable across standard
// library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double normal(double stddev) {
    if (has_spare_) {
      has_spare_ = false;
      return spare_ * stddev;
    }
    double u1 = uniform01(), u2 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double mag = std::sqrt(-2.0 * std::log(u1));
    spare_ = mag * std::sin(2.0 * kPi * u2);
    has_spare_ = true;
    return mag * std::cos(2.0 * kPi * u2) * stddev;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  int poisson(double lambda) {
    if (lambda <= 0.0) return 0;
    const double limit = std::exp(-lambda);
    int k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= uniform01();
    } while (p > limit);
    return k - 1;
  }

private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

void validate(const SimConfig& c) {
  if (c.n_lanes < 1) throw InvalidConfig("n_lanes must be >= 1");
  if (!(c.duration_s > 0.0)) throw InvalidConfig("duration_s must be > 0");
  if (!(c.fps > 0.0)) throw InvalidConfig("fps must be > 0");
  if (c.swimmer_speed < 0.0) throw InvalidConfig("swimmer_speed must be >= 0");
  if (c.stroke_freq_hz.empty() ||
      (c.stroke_freq_hz.size() != 1 &&
       c.stroke_freq_hz.size() != static_cast<size_t>(c.n_lanes))) {
    throw InvalidConfig("stroke_freq_hz needs 1 or n_lanes entries");
  }
  for (double f : c.stroke_freq_hz) {
    if (!(f > 0.0) || f >= 3.0) {
      throw InvalidConfig("stroke frequencies must lie in (0, 3) Hz");
    }
  }
  if (c.miss_rate < 0.0 || c.miss_rate > 1.0) {
    throw InvalidConfig("miss_rate must lie in [0, 1]");
  }
  if (c.fp_rate < 0.0) throw InvalidConfig("fp_rate must be >= 0");
  if (c.det_noise_px < 0.0) throw InvalidConfig("det_noise_px must be >= 0");
  if (c.s_noise < 0.0) throw InvalidConfig("s_noise must be >= 0");
  for (const TurnWindow& w : c.turn_windows) {
    if (!(w.start_s < w.end_s)) {
      throw InvalidConfig("turn window start must precede end");
    }
  }
}

bool in_turn(const SimConfig& c, double t) {
  for (const TurnWindow& w : c.turn_windows) {
    if (t >= w.start_s && t < w.end_s) return true;
  }
  return false;
}

}  // namespace

SimOutput generate(const SimConfig& config) {
  validate(config);
  const long n_frames = std::llround(config.duration_s * config.fps);
  const int n = config.n_lanes;
  auto freq = [&](int lane_idx) {
    return config.stroke_freq_hz.size() == 1
               ? config.stroke_freq_hz[0]
               : config.stroke_freq_hz[lane_idx];
  };
  // Distinct per-lane phases keep peaks from coinciding across lanes; the
  // base of -pi/2 starts every lane at the bottom of a stroke so the first
  // above-threshold run is never clipped by the start of the series.
  auto phase = [&](int lane_idx) { return -kPi / 2.0 - 0.2 * lane_idx; };

  SimOutput out;

  for (int i = 0; i < n; ++i) {
    Track track;
    track.track_id = i + 1;
    track.lane = i + 1;
    track.source = TrackSource::GroundTruth;

    SValueSeries clean{i + 1, config.fps, {}};
    const double v_center = kLaneHeight * (i + 0.5);
    for (long f = 0; f < n_frames; ++f) {
      const double t = static_cast<double>(f) / config.fps;
      track.entries.push_back(TrackEntry{
          f, BoundingBox{kStartX + config.swimmer_speed * f,
                         v_center - kBoxHeight / 2.0, kBoxWidth, kBoxHeight}});
      SValueSample sample{f, 0.5, false};
      if (!in_turn(config, t)) {
        sample.swimming = true;
        sample.s = std::clamp(
            0.5 + 0.5 * std::sin(2.0 * kPi * freq(i) * t + phase(i)), 0.0,
            1.0);
      }
      clean.samples.push_back(sample);
    }
    out.gt_tracks.push_back(std::move(track));

    // Noisy twin of the series, standing in for a predictor's output.
    SValueSeries noisy = clean;
    Rng srng(config.seed * 1000003ULL + static_cast<std::uint64_t>(i + 1));
    if (config.s_noise > 0.0) {
      for (SValueSample& sample : noisy.samples) {
        sample.s = std::clamp(sample.s + srng.normal(config.s_noise), 0.0,
                              1.0);
      }
    }
    out.gt_svalues.push_back(std::move(clean));
    out.noisy_svalues.push_back(std::move(noisy));

    // Analytic maxima: 2*pi*f*t + phase = pi/2 + 2*pi*k.
    std::vector<double> peaks;
    const double f_hz = freq(i);
    const double t0 = (kPi / 2.0 - phase(i)) / (2.0 * kPi * f_hz);
    for (long k = 0;; ++k) {
      const double t = t0 + static_cast<double>(k) / f_hz;
      if (t >= config.duration_s) break;
      if (t < 0.0 || in_turn(config, t)) continue;
      peaks.push_back(t * config.fps);
    }
    out.true_peaks[i + 1] = std::move(peaks);
  }

  // Detections: one RNG stream, frames outer, lanes inner, clutter last.
  Rng rng(config.seed);
  const double canvas_w =
      kStartX + config.swimmer_speed * static_cast<double>(n_frames) +
      kBoxWidth + kStartX;
  const double canvas_h = kLaneHeight * n;
  for (long f = 0; f < n_frames; ++f) {
    const double t = static_cast<double>(f) / config.fps;
    const bool turning = in_turn(config, t);
    for (int i = 0; i < n; ++i) {
      const bool dropped = rng.bernoulli(config.miss_rate);
      const double du =
          config.det_noise_px > 0.0 ? rng.normal(config.det_noise_px) : 0.0;
      const double dv =
          config.det_noise_px > 0.0 ? rng.normal(config.det_noise_px) : 0.0;
      if (dropped) continue;
      const BoundingBox& gt = out.gt_tracks[i].entries[f].box;
      out.detections.push_back(Detection{
          f, BoundingBox{gt.x + du, gt.y + dv, gt.w, gt.h}, 1.0,
          turning ? PoseClass::Turning : PoseClass::Swimming, i + 1});
    }
    const int n_fp = rng.poisson(config.fp_rate);
    for (int k = 0; k < n_fp; ++k) {
      const double cx =
          kBoxWidth / 2.0 + rng.uniform01() * (canvas_w - kBoxWidth);
      const double cy =
          kBoxHeight / 2.0 + rng.uniform01() * (canvas_h - kBoxHeight);
      out.detections.push_back(Detection{
          f, BoundingBox{cx - kBoxWidth / 2.0, cy - kBoxHeight / 2.0,
                         kBoxWidth, kBoxHeight},
          0.5, PoseClass::Swimming, kNoLane});
    }
  }
  return out;
}

}  // namespace swimtrack::simgen
