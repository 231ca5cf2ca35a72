#include "swimtrack/stroke.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

namespace swimtrack::stroke {
namespace {

struct Run {
  double index_sum = 0.0;
  long count = 0;

  double mean() const { return index_sum / static_cast<double>(count); }
};

void validate(const FilterSpec& spec) {
  if (spec.order < 2 || spec.order % 2 != 0) {
    throw InvalidSpec("filter order must be even and >= 2, got " +
                      std::to_string(spec.order));
  }
  if (!(spec.fps > 0.0)) {
    throw InvalidSpec("fps must be positive");
  }
  if (!(spec.cutoff_hz > 0.0) || spec.cutoff_hz >= spec.fps / 2.0) {
    throw InvalidSpec("cutoff must lie in (0, fps/2), got " +
                      std::to_string(spec.cutoff_hz) + " Hz at " +
                      std::to_string(spec.fps) + " fps");
  }
}

// One direction-of-travel pass of a section over the whole signal, in place.
// State starts at the steady-state response to a step of the first sample,
// which suppresses the startup transient on the reflected padding.
void filter_section(const Biquad& q, std::vector<double>& x) {
  const double dc_gain = (q.b0 + q.b1 + q.b2) / (1.0 + q.a1 + q.a2);
  double z1 = (dc_gain - q.b0) * x.front();
  double z2 = (q.b2 - q.a2 * dc_gain) * x.front();
  for (double& xn : x) {
    const double yn = q.b0 * xn + z1;
    z1 = q.b1 * xn - q.a1 * yn + z2;
    z2 = q.b2 * xn - q.a2 * yn;
    xn = yn;
  }
}

void filter_cascade(const std::vector<Biquad>& sections,
                    std::vector<double>& x) {
  for (const Biquad& q : sections) filter_section(q, x);
}

}  // namespace

std::vector<Biquad> design_butterworth(const FilterSpec& spec) {
  validate(spec);
  const double fs = spec.fps;
  // Pre-warp so the bilinear transform lands the -3 dB point on cutoff_hz.
  const double wc = 2.0 * fs * std::tan(std::numbers::pi * spec.cutoff_hz / fs);

  std::vector<Biquad> sections;
  sections.reserve(spec.order / 2);
  for (int k = 0; k < spec.order / 2; ++k) {
    const double theta = std::numbers::pi * (2.0 * k + 1.0) /
                             (2.0 * spec.order) +
                         std::numbers::pi / 2.0;
    // Conjugate pole pair wc * e^{+-i theta}: s^2 + a1 s + a0.
    const double a1 = -2.0 * wc * std::cos(theta);
    const double a0 = wc * wc;
    const double K = 2.0 * fs;
    const double d = K * K + a1 * K + a0;
    sections.push_back(Biquad{a0 / d, 2.0 * a0 / d, a0 / d,
                              (2.0 * a0 - 2.0 * K * K) / d,
                              (K * K - a1 * K + a0) / d});
  }
  return sections;
}

double magnitude_at(const std::vector<Biquad>& sections, double freq_hz,
                    double fps) {
  const std::complex<double> zinv =
      std::exp(std::complex<double>(0.0, -2.0 * std::numbers::pi * freq_hz /
                                             fps));
  std::complex<double> h = 1.0;
  for (const Biquad& q : sections) {
    h *= (q.b0 + q.b1 * zinv + q.b2 * zinv * zinv) /
         (1.0 + q.a1 * zinv + q.a2 * zinv * zinv);
  }
  return std::abs(h);
}

std::vector<double> butterworth_lowpass(const std::vector<double>& signal,
                                        const FilterSpec& spec) {
  const auto sections = design_butterworth(spec);
  const long n = static_cast<long>(signal.size());
  if (n < 3L * spec.order) {
    throw SignalTooShort("signal of length " + std::to_string(n) +
                         " is shorter than 3 * order = " +
                         std::to_string(3 * spec.order));
  }

  const long pad = std::min<long>(3L * spec.order, n - 1);
  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (long i = pad; i >= 1; --i) ext.push_back(2.0 * signal[0] - signal[i]);
  ext.insert(ext.end(), signal.begin(), signal.end());
  for (long i = 1; i <= pad; ++i) {
    ext.push_back(2.0 * signal[n - 1] - signal[n - 1 - i]);
  }

  filter_cascade(sections, ext);
  std::reverse(ext.begin(), ext.end());
  filter_cascade(sections, ext);
  std::reverse(ext.begin(), ext.end());

  return std::vector<double>(ext.begin() + pad, ext.begin() + pad + n);
}

std::vector<double> extract_peaks(const std::vector<double>& smoothed,
                                  const std::vector<bool>& swimming,
                                  double min_gap_frames) {
  if (smoothed.size() != swimming.size()) {
    throw Error("extract_peaks: signal and swimming flags differ in length");
  }
  double sum = 0.0;
  long count = 0;
  for (size_t i = 0; i < smoothed.size(); ++i) {
    if (swimming[i]) {
      sum += smoothed[i];
      ++count;
    }
  }
  if (count == 0) {
    throw EmptySwimmingRegion("extract_peaks: no swimming frames");
  }
  const double threshold = sum / static_cast<double>(count);

  std::vector<double> peaks;
  size_t i = 0;
  const size_t n = smoothed.size();
  while (i < n) {
    if (!swimming[i]) {
      ++i;
      continue;
    }
    // One swimming segment: collect its above-threshold runs, merging runs
    // whose means are closer than min_gap_frames.
    std::vector<Run> runs;
    bool in_run = false;
    for (; i < n && swimming[i]; ++i) {
      if (smoothed[i] >= threshold) {
        if (!in_run) {
          runs.push_back(Run{});
          in_run = true;
        }
        runs.back().index_sum += static_cast<double>(i);
        runs.back().count += 1;
      } else {
        in_run = false;
      }
    }
    if (runs.empty()) continue;
    Run group = runs.front();
    for (size_t k = 1; k < runs.size(); ++k) {
      if (runs[k].mean() - group.mean() < min_gap_frames) {
        group.index_sum += runs[k].index_sum;
        group.count += runs[k].count;
      } else {
        peaks.push_back(group.mean());
        group = runs[k];
      }
    }
    peaks.push_back(group.mean());
  }
  return peaks;
}

std::vector<RatePoint> stroke_rates(const std::vector<double>& peaks,
                                    double fps) {
  if (peaks.size() < 2) {
    throw InsufficientPeaks("stroke_rates: need at least 2 peaks, got " +
                            std::to_string(peaks.size()));
  }
  std::vector<RatePoint> rates;
  rates.reserve(peaks.size() - 1);
  for (size_t i = 0; i + 1 < peaks.size(); ++i) {
    const double gap = peaks[i + 1] - peaks[i];
    rates.push_back(RatePoint{(peaks[i] + peaks[i + 1]) / 2.0,
                              60.0 * fps / gap});
  }
  return rates;
}

StrokeSeries process_series(const SValueSeries& series,
                            const FilterSpec& spec) {
  std::vector<double> values;
  std::vector<bool> swimming;
  values.reserve(series.samples.size());
  swimming.reserve(series.samples.size());
  for (const SValueSample& sample : series.samples) {
    values.push_back(sample.s);
    swimming.push_back(sample.swimming);
  }

  const std::vector<double> smoothed = butterworth_lowpass(values, spec);
  const double min_gap = spec.fps / spec.cutoff_hz;
  const std::vector<double> peak_indices =
      extract_peaks(smoothed, swimming, min_gap);

  // Map fractional sample indices onto frame numbers.
  auto frame_at = [&](double idx) {
    const auto lo = static_cast<size_t>(std::floor(idx));
    const double frac = idx - std::floor(idx);
    if (frac == 0.0 || lo + 1 >= series.samples.size()) {
      return static_cast<double>(series.samples[lo].frame) + frac;
    }
    const double f0 = static_cast<double>(series.samples[lo].frame);
    const double f1 = static_cast<double>(series.samples[lo + 1].frame);
    return f0 + frac * (f1 - f0);
  };

  StrokeSeries out;
  out.track_id = series.track_id;
  out.peak_positions.reserve(peak_indices.size());
  for (double idx : peak_indices) out.peak_positions.push_back(frame_at(idx));

  // Segment id per sample, so rates never span a non-swimming gap.
  std::vector<int> segment(series.samples.size(), -1);
  int seg = -1;
  for (size_t k = 0; k < swimming.size(); ++k) {
    if (swimming[k]) {
      if (k == 0 || !swimming[k - 1]) ++seg;
      segment[k] = seg;
    }
  }

  std::vector<double> segment_peaks;
  int current = -2;
  auto flush = [&]() {
    if (segment_peaks.size() >= 2) {
      const auto rates = stroke_rates(segment_peaks, spec.fps);
      out.rates.insert(out.rates.end(), rates.begin(), rates.end());
    }
    segment_peaks.clear();
  };
  for (double idx : peak_indices) {
    const int s = segment[static_cast<size_t>(std::llround(idx))];
    if (s != current) {
      flush();
      current = s;
    }
    segment_peaks.push_back(frame_at(idx));
  }
  flush();
  return out;
}

}  // namespace swimtrack::stroke
