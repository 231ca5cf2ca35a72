#include "swimtrack/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

namespace swimtrack::io {
namespace {

using nlohmann::json;

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& s, long line) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("cannot parse number '" + s + "'", line);
  }
}

long parse_long(const std::string& s, long line) {
  try {
    size_t pos = 0;
    const long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("cannot parse integer '" + s + "'", line);
  }
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> keys,
                         const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) {
      if (key == k) {
        known = true;
        break;
      }
    }
    if (!known) throw Error(where + ": unknown key '" + key + "'");
  }
}

}  // namespace

double round_sig(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return std::strtod(buf, nullptr);
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

void atomic_write(const std::filesystem::path& path,
                  const std::string& content) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::vector<DetectionRow> read_detection_csv(
    const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  std::vector<DetectionRow> rows;
  for (size_t k = 0; k < lines.size(); ++k) {
    const long line_no = static_cast<long>(k) + 1;
    const std::string& line = lines[k];
    if (line.empty()) continue;
    if (k == 0 && line.rfind("frame", 0) == 0) continue;  // optional header
    const auto fields = split_csv(line);
    if (fields.size() != 9) {
      throw ParseError("expected 9 columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    DetectionRow row;
    row.frame = parse_long(fields[0], line_no);
    row.track_id = static_cast<int>(parse_long(fields[1], line_no));
    row.x = parse_double(fields[2], line_no);
    row.y = parse_double(fields[3], line_no);
    row.w = parse_double(fields[4], line_no);
    row.h = parse_double(fields[5], line_no);
    row.confidence = parse_double(fields[6], line_no);
    row.class_id = static_cast<int>(parse_long(fields[7], line_no));
    row.lane = static_cast<int>(parse_long(fields[8], line_no));
    if (row.frame < 0) throw ParseError("negative frame index", line_no);
    if (row.w <= 0 || row.h <= 0) {
      throw ParseError("box width/height must be positive", line_no);
    }
    if (row.class_id < 0 || row.class_id > 5) {
      throw ParseError("class_id must lie in 0..5", line_no);
    }
    if (row.confidence < 0.0 || row.confidence > 1.0) {
      throw ParseError("confidence must lie in [0, 1]", line_no);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_detection_csv(const std::filesystem::path& path,
                         const std::vector<DetectionRow>& rows) {
  std::string out = "frame,track_id,x,y,w,h,confidence,class_id,lane\n";
  for (const DetectionRow& r : rows) {
    out += std::to_string(r.frame) + ',' + std::to_string(r.track_id) + ',' +
           format_double(r.x) + ',' + format_double(r.y) + ',' +
           format_double(r.w) + ',' + format_double(r.h) + ',' +
           format_double(r.confidence) + ',' + std::to_string(r.class_id) +
           ',' + std::to_string(r.lane) + '\n';
  }
  atomic_write(path, out);
}

std::vector<SValueRow> read_svalue_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  std::vector<SValueRow> rows;
  for (size_t k = 0; k < lines.size(); ++k) {
    const long line_no = static_cast<long>(k) + 1;
    const std::string& line = lines[k];
    if (line.empty()) continue;
    if (k == 0 && line.rfind("frame", 0) == 0) continue;
    const auto fields = split_csv(line);
    if (fields.size() != 3) {
      throw ParseError("expected 3 columns, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    SValueRow row;
    row.frame = parse_long(fields[0], line_no);
    row.s_value = parse_double(fields[1], line_no);
    const long swimming = parse_long(fields[2], line_no);
    if (swimming != 0 && swimming != 1) {
      throw ParseError("swimming flag must be 0 or 1", line_no);
    }
    row.swimming = swimming == 1;
    if (row.s_value < 0.0 || row.s_value > 1.0) {
      throw ParseError("s_value must lie in [0, 1]", line_no);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_svalue_csv(const std::filesystem::path& path,
                      const std::vector<SValueRow>& rows) {
  std::string out = "frame,s_value,swimming\n";
  for (const SValueRow& r : rows) {
    out += std::to_string(r.frame) + ',' + format_double(r.s_value) + ',' +
           (r.swimming ? "1" : "0") + '\n';
  }
  atomic_write(path, out);
}

std::vector<Detection> to_detections(const std::vector<DetectionRow>& rows) {
  std::vector<Detection> dets;
  dets.reserve(rows.size());
  for (const DetectionRow& r : rows) {
    dets.push_back(Detection{r.frame, BoundingBox{r.x, r.y, r.w, r.h},
                             r.confidence, static_cast<PoseClass>(r.class_id),
                             r.lane});
  }
  return dets;
}

std::vector<Track> to_tracks(const std::vector<DetectionRow>& rows) {
  std::map<int, Track> by_id;
  for (const DetectionRow& r : rows) {
    if (r.track_id < 0) {
      throw Error("track rows must carry a non-negative track_id");
    }
    Track& track = by_id[r.track_id];
    track.track_id = r.track_id;
    if (r.lane != kNoLane) track.lane = r.lane;
    if (!track.entries.empty() && r.frame <= track.entries.back().frame) {
      throw Error("track " + std::to_string(r.track_id) +
                  ": frames not strictly increasing at frame " +
                  std::to_string(r.frame));
    }
    track.entries.push_back(TrackEntry{r.frame, BoundingBox{r.x, r.y, r.w,
                                                            r.h}});
  }
  std::vector<Track> tracks;
  tracks.reserve(by_id.size());
  for (auto& [id, track] : by_id) tracks.push_back(std::move(track));
  return tracks;
}

std::vector<DetectionRow> detection_rows(const std::vector<Detection>& dets) {
  std::vector<DetectionRow> rows;
  rows.reserve(dets.size());
  for (const Detection& d : dets) {
    rows.push_back(DetectionRow{d.frame, -1, d.box.x, d.box.y, d.box.w,
                                d.box.h, d.confidence,
                                static_cast<int>(d.class_label), d.lane});
  }
  return rows;
}

std::vector<DetectionRow> track_rows(const std::vector<Track>& tracks) {
  std::vector<DetectionRow> rows;
  for (const Track& t : tracks) {
    for (const TrackEntry& e : t.entries) {
      rows.push_back(DetectionRow{e.frame, t.track_id, e.box.x, e.box.y,
                                  e.box.w, e.box.h, 1.0,
                                  static_cast<int>(PoseClass::Swimming),
                                  t.lane});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    return a.frame != b.frame ? a.frame < b.frame
                              : a.track_id < b.track_id;
  });
  return rows;
}

SValueSeries to_series(const std::vector<SValueRow>& rows, double fps,
                       int track_id) {
  SValueSeries series{track_id, fps, {}};
  series.samples.reserve(rows.size());
  for (const SValueRow& r : rows) {
    series.samples.push_back(SValueSample{r.frame, r.s_value, r.swimming});
  }
  return series;
}

std::vector<SValueRow> series_rows(const SValueSeries& series) {
  std::vector<SValueRow> rows;
  rows.reserve(series.samples.size());
  for (const SValueSample& s : series.samples) {
    rows.push_back(SValueRow{s.frame, s.s, s.swimming});
  }
  return rows;
}

simgen::SimConfig read_sim_config(const std::filesystem::path& path) {
  const json j = read_json(path);
  reject_unknown_keys(j,
                      {"n_lanes", "duration_s", "fps", "swimmer_speed",
                       "stroke_freq_hz", "det_noise_px", "miss_rate",
                       "fp_rate", "s_noise", "turn_windows", "seed"},
                      "sim config");
  simgen::SimConfig config;
  try {
    if (j.contains("n_lanes")) config.n_lanes = j["n_lanes"].get<int>();
    if (j.contains("duration_s")) {
      config.duration_s = j["duration_s"].get<double>();
    }
    if (j.contains("fps")) config.fps = j["fps"].get<double>();
    if (j.contains("swimmer_speed")) {
      config.swimmer_speed = j["swimmer_speed"].get<double>();
    }
    if (j.contains("stroke_freq_hz")) {
      if (j["stroke_freq_hz"].is_array()) {
        config.stroke_freq_hz = j["stroke_freq_hz"].get<std::vector<double>>();
      } else {
        config.stroke_freq_hz = {j["stroke_freq_hz"].get<double>()};
      }
    }
    if (j.contains("det_noise_px")) {
      config.det_noise_px = j["det_noise_px"].get<double>();
    }
    if (j.contains("miss_rate")) config.miss_rate = j["miss_rate"].get<double>();
    if (j.contains("fp_rate")) config.fp_rate = j["fp_rate"].get<double>();
    if (j.contains("s_noise")) config.s_noise = j["s_noise"].get<double>();
    if (j.contains("turn_windows")) {
      for (const json& w : j["turn_windows"]) {
        if (w.is_array() && w.size() == 2) {
          config.turn_windows.push_back(
              simgen::TurnWindow{w[0].get<double>(), w[1].get<double>()});
        } else if (w.is_object()) {
          config.turn_windows.push_back(simgen::TurnWindow{
              w.at("start_s").get<double>(), w.at("end_s").get<double>()});
        } else {
          throw Error("turn_windows entries must be [start, end] pairs");
        }
      }
    }
    if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw Error("sim config: " + std::string(e.what()));
  }
  return config;
}

TrackerConfig read_tracker_config(const std::filesystem::path& path) {
  const json j = read_json(path);
  reject_unknown_keys(j, {"iou_min", "max_age", "min_hits", "kalman"},
                      "tracker config");
  TrackerConfig config;
  try {
    if (j.contains("iou_min")) config.iou_min = j["iou_min"].get<double>();
    if (j.contains("max_age")) config.max_age = j["max_age"].get<int>();
    if (j.contains("min_hits")) config.min_hits = j["min_hits"].get<int>();
    if (j.contains("kalman")) {
      const json& k = j["kalman"];
      reject_unknown_keys(k, {"p0_scale", "q_scale", "r_scale"},
                          "kalman config");
      if (k.contains("p0_scale")) {
        config.kalman.p0_scale = k["p0_scale"].get<double>();
      }
      if (k.contains("q_scale")) {
        config.kalman.q_scale = k["q_scale"].get<double>();
      }
      if (k.contains("r_scale")) {
        config.kalman.r_scale = k["r_scale"].get<double>();
      }
    }
  } catch (const json::exception& e) {
    throw Error("tracker config: " + std::string(e.what()));
  }
  if (config.max_age < 1 || config.min_hits < 1) {
    throw Error("tracker config: max_age and min_hits must be >= 1");
  }
  if (config.iou_min < 0.0 || config.iou_min > 1.0) {
    throw Error("tracker config: iou_min must lie in [0, 1]");
  }
  if (config.kalman.p0_scale <= 0.0 || config.kalman.q_scale <= 0.0 ||
      config.kalman.r_scale <= 0.0) {
    throw Error("tracker config: kalman scales must be positive");
  }
  return config;
}

nlohmann::json stroke_series_json(const stroke::StrokeSeries& series) {
  json j;
  j["track_id"] = series.track_id;
  json peaks = json::array();
  for (double p : series.peak_positions) peaks.push_back(round_sig(p));
  j["peaks"] = std::move(peaks);
  json rates = json::array();
  for (const stroke::RatePoint& r : series.rates) {
    rates.push_back(json{{"frame", round_sig(r.frame)},
                         {"spm", round_sig(r.strokes_per_min)}});
  }
  j["rates"] = std::move(rates);
  return j;
}

std::vector<double> peaks_from_json(const nlohmann::json& j) {
  if (!j.contains("peaks") || !j["peaks"].is_array()) {
    throw Error("stroke JSON: missing 'peaks' array");
  }
  std::vector<double> peaks;
  for (const json& p : j["peaks"]) peaks.push_back(p.get<double>());
  return peaks;
}

nlohmann::json mot_report_json(const metrics::MotReport& report) {
  return json{{"mota", round_sig(report.mota)},
              {"mota_raw", round_sig(report.mota_raw)},
              {"motp", round_sig(report.motp)},
              {"idf1", round_sig(report.idf1)},
              {"idp", round_sig(report.idp)},
              {"idr", round_sig(report.idr)},
              {"gt", report.gt},
              {"mt", report.mt},
              {"pt", report.pt},
              {"ml", report.ml},
              {"fp", report.fp},
              {"fn", report.fn},
              {"idsw", report.idsw}};
}

nlohmann::json stroke_report_json(const metrics::StrokeReport& report) {
  return json{{"f1", round_sig(report.f1)},   {"asd", round_sig(report.asd)},
              {"sdstd", round_sig(report.sdstd)},
              {"delta", round_sig(report.delta)},
              {"tp", report.tp},              {"fp", report.fp},
              {"fn", report.fn}};
}

void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
  atomic_write(path, j.dump(2) + "\n");
}

nlohmann::json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

}  // namespace swimtrack::io
