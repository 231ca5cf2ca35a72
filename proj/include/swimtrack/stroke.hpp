// stroke.hpp: s-value smoothing and stroke peak / stroke rate extraction.
//
// The smoothing filter is a digital Butterworth low-pass designed by bilinear
// transform with frequency pre-warping, realized as cascaded second-order
// sections and applied forward-backward (zero-phase). The -3 dB point of a
// single pass sits exactly at cutoff_hz.

#pragma once

#include <vector>

#include "swimtrack/core.hpp"

namespace swimtrack::stroke {

class SignalTooShort : public Error {
public:
  using Error::Error;
};
class InvalidSpec : public Error {
public:
  using Error::Error;
};
class EmptySwimmingRegion : public Error {
public:
  using Error::Error;
};
class InsufficientPeaks : public Error {
public:
  using Error::Error;
};

struct FilterSpec {
  int order = 8;
  double cutoff_hz = 3.0;
  double fps = 30.0;
};

// One second-order section, normalized so a0 = 1.
struct Biquad {
  double b0, b1, b2;
  double a1, a2;
};

// Throws InvalidSpec if the cutoff is at or above Nyquist, or the order is
// odd or < 2.
std::vector<Biquad> design_butterworth(const FilterSpec& spec);

// Single-pass magnitude response of the cascade at freq_hz.
double magnitude_at(const std::vector<Biquad>& sections, double freq_hz,
                    double fps);

// Zero-phase low-pass: forward-backward pass over the cascade with odd
// reflection padding of length min(3 * order, n - 1) and steady-state section
// initialization. Output length equals input length.
std::vector<double> butterworth_lowpass(const std::vector<double>& signal,
                                        const FilterSpec& spec);

// Thresholds the smoothed signal at the mean over swimming frames and emits
// the mean index of each maximal run of above-threshold swimming frames.
// Runs within one swimming segment closer than min_gap_frames are merged;
// runs never merge across a non-swimming gap.
std::vector<double> extract_peaks(const std::vector<double>& smoothed,
                                  const std::vector<bool>& swimming,
                                  double min_gap_frames = 0.0);

struct RatePoint {
  double frame = 0.0;            // midpoint of the peak pair
  double strokes_per_min = 0.0;  // 60 * fps / peak gap
};

// Rates between neighbouring peaks. Throws InsufficientPeaks below 2 peaks.
std::vector<RatePoint> stroke_rates(const std::vector<double>& peaks,
                                    double fps);

struct StrokeSeries {
  int track_id = 0;
  std::vector<double> peak_positions;  // fractional frame indices
  std::vector<RatePoint> rates;
};

// Full chain over one series: smooth, extract peaks with a minimum gap of
// fps / cutoff_hz frames, then compute rates per swimming segment (never
// across a non-swimming gap).
StrokeSeries process_series(const SValueSeries& series, const FilterSpec& spec);

}  // namespace swimtrack::stroke
