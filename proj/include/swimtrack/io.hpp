// io.hpp: file formats shared by the CLI commands.
//
// Frame-indexed data travels as CSV (one row per box or per s-value sample),
// configs and reports as JSON. Detection CSV columns, in order:
//   frame,track_id,x,y,w,h,confidence,class_id,lane
// with track_id = -1 for raw detections and lane = -1 when unknown. The
// header line is optional on input and always written on output. All floats
// are serialized with 6 significant digits; files are written atomically.

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "swimtrack/core.hpp"
#include "swimtrack/metrics.hpp"
#include "swimtrack/simgen.hpp"
#include "swimtrack/stroke.hpp"
#include "swimtrack/tracker.hpp"

#include <nlohmann/json_fwd.hpp>

namespace swimtrack::io {

class ParseError : public Error {
public:
  ParseError(const std::string& message, long line)
      : Error(message + " (line " + std::to_string(line) + ")"),
        line_(line) {}

  long line() const { return line_; }

private:
  long line_;
};

struct DetectionRow {
  long frame = 0;
  int track_id = -1;
  double x = 0, y = 0, w = 0, h = 0;
  double confidence = 1.0;
  int class_id = static_cast<int>(PoseClass::Swimming);
  int lane = kNoLane;
};

struct SValueRow {
  long frame = 0;
  double s_value = 0.5;
  bool swimming = false;
};

// Round to 6 significant digits, the precision used for all float output.
double round_sig(double value);
std::string format_double(double value);

void atomic_write(const std::filesystem::path& path,
                  const std::string& content);

// --- CSV ---------------------------------------------------------------

std::vector<DetectionRow> read_detection_csv(
    const std::filesystem::path& path);
void write_detection_csv(const std::filesystem::path& path,
                         const std::vector<DetectionRow>& rows);

std::vector<SValueRow> read_svalue_csv(const std::filesystem::path& path);
void write_svalue_csv(const std::filesystem::path& path,
                      const std::vector<SValueRow>& rows);

// --- conversions ---------------------------------------------------------

std::vector<Detection> to_detections(const std::vector<DetectionRow>& rows);
std::vector<Track> to_tracks(const std::vector<DetectionRow>& rows);
std::vector<DetectionRow> detection_rows(const std::vector<Detection>& dets);
std::vector<DetectionRow> track_rows(const std::vector<Track>& tracks);
SValueSeries to_series(const std::vector<SValueRow>& rows, double fps,
                       int track_id);
std::vector<SValueRow> series_rows(const SValueSeries& series);

// --- JSON ----------------------------------------------------------------

simgen::SimConfig read_sim_config(const std::filesystem::path& path);
TrackerConfig read_tracker_config(const std::filesystem::path& path);

nlohmann::json stroke_series_json(const stroke::StrokeSeries& series);
std::vector<double> peaks_from_json(const nlohmann::json& j);

nlohmann::json mot_report_json(const metrics::MotReport& report);
nlohmann::json stroke_report_json(const metrics::StrokeReport& report);

void write_json(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace swimtrack::io
