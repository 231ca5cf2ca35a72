// main.cpp: swimtrack command-line tool.
//
// Subcommands: simulate, track, strokes, eval-mot, eval-stroke, pipeline.
// Exit codes: 0 success, 2 configuration error, 3 malformed input data,
// 4 degenerate signal (too short or no swimming frames).

#include <cstdlib>
#include <iostream>
#include <map>
#include <regex>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "swimtrack/io.hpp"

namespace {

using nlohmann::json;
using namespace swimtrack;

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitSignal = 4;

int fail(int code, const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return code;
}

int run_simulate(const std::string& config_path, const std::string& out_dir) {
  simgen::SimConfig config;
  try {
    config = io::read_sim_config(config_path);
  } catch (const Error& e) {
    return fail(kExitConfig, e.what());
  }
  if (const char* seed_env = std::getenv("SWIMTRACK_SEED")) {
    try {
      config.seed = std::stoull(seed_env);
    } catch (const std::exception&) {
      return fail(kExitConfig,
                  std::string("SWIMTRACK_SEED is not an integer: ") +
                      seed_env);
    }
  }

  simgen::SimOutput sim;
  try {
    sim = simgen::generate(config);
  } catch (const simgen::InvalidConfig& e) {
    return fail(kExitConfig, e.what());
  }

  const std::filesystem::path out(out_dir);
  std::filesystem::create_directories(out);
  io::write_detection_csv(out / "detections.csv",
                          io::detection_rows(sim.detections));
  io::write_detection_csv(out / "gt_tracks.csv",
                          io::track_rows(sim.gt_tracks));
  for (const SValueSeries& series : sim.gt_svalues) {
    io::write_svalue_csv(out / "svalues_gt" /
                             ("track_" + std::to_string(series.track_id) +
                              ".csv"),
                         io::series_rows(series));
  }
  for (const SValueSeries& series : sim.noisy_svalues) {
    io::write_svalue_csv(out / "svalues_pred" /
                             ("track_" + std::to_string(series.track_id) +
                              ".csv"),
                         io::series_rows(series));
  }
  json peaks;
  peaks["fps"] = io::round_sig(config.fps);
  json tracks = json::array();
  for (const auto& [track_id, positions] : sim.true_peaks) {
    json entry;
    entry["track_id"] = track_id;
    entry["lane"] = track_id;
    json arr = json::array();
    for (double p : positions) arr.push_back(io::round_sig(p));
    entry["peaks"] = std::move(arr);
    tracks.push_back(std::move(entry));
  }
  peaks["tracks"] = std::move(tracks);
  io::write_json(out / "truth_peaks.json", peaks);
  return 0;
}

int run_track(const std::string& detections_path,
              const std::string& config_path, const std::string& out_path) {
  TrackerConfig config;
  if (!config_path.empty()) {
    try {
      config = io::read_tracker_config(config_path);
    } catch (const Error& e) {
      return fail(kExitConfig, e.what());
    }
  }
  std::vector<io::DetectionRow> rows;
  try {
    rows = io::read_detection_csv(detections_path);
  } catch (const Error& e) {
    return fail(kExitData, e.what());
  }

  Tracker tracker(config);
  try {
    const auto detections = io::to_detections(rows);
    size_t i = 0;
    while (i < detections.size()) {
      const long frame = detections[i].frame;
      std::vector<Detection> frame_dets;
      while (i < detections.size() && detections[i].frame == frame) {
        frame_dets.push_back(detections[i++]);
      }
      tracker.step(frame, frame_dets);
    }
  } catch (const OutOfOrderFrame& e) {
    return fail(kExitData, e.what());
  }
  io::write_detection_csv(out_path, io::track_rows(tracker.finalize()));
  return 0;
}

int run_strokes(const std::string& svalues_path, double fps,
                const std::string& out_path) {
  std::vector<io::SValueRow> rows;
  try {
    rows = io::read_svalue_csv(svalues_path);
  } catch (const Error& e) {
    return fail(kExitData, e.what());
  }
  try {
    const stroke::StrokeSeries result = stroke::process_series(
        io::to_series(rows, fps, 0), stroke::FilterSpec{8, 3.0, fps});
    io::write_json(out_path, io::stroke_series_json(result));
  } catch (const stroke::InvalidSpec& e) {
    return fail(kExitConfig, e.what());
  } catch (const stroke::SignalTooShort& e) {
    return fail(kExitSignal, e.what());
  } catch (const stroke::EmptySwimmingRegion& e) {
    return fail(kExitSignal, e.what());
  }
  return 0;
}

int run_eval_mot(const std::string& gt_path, const std::string& hyp_path,
                 const std::string& out_path) {
  std::vector<Track> gt, hyp;
  try {
    gt = io::to_tracks(io::read_detection_csv(gt_path));
    hyp = io::to_tracks(io::read_detection_csv(hyp_path));
  } catch (const Error& e) {
    return fail(kExitData, e.what());
  }
  try {
    io::write_json(out_path, io::mot_report_json(metrics::mot_report(hyp, gt)));
  } catch (const metrics::FrameRangeMismatch& e) {
    return fail(kExitData, e.what());
  }
  return 0;
}

std::vector<double> load_peaks(const std::string& path, int track_id) {
  const json j = io::read_json(path);
  if (j.contains("tracks")) {
    if (track_id < 0) {
      throw Error(path +
                  " holds per-track peak lists; select one with --track-id");
    }
    for (const json& entry : j["tracks"]) {
      if (entry.at("track_id").get<int>() == track_id) {
        return io::peaks_from_json(entry);
      }
    }
    throw Error(path + ": no track with id " + std::to_string(track_id));
  }
  return io::peaks_from_json(j);
}

int run_eval_stroke(const std::string& pred_path, const std::string& truth_path,
                    const std::string& sv_pred_path,
                    const std::string& sv_truth_path,
                    const std::string& out_path, int track_id) {
  std::vector<double> pred_peaks, truth_peaks, pred_s, truth_s;
  try {
    pred_peaks = load_peaks(pred_path, track_id);
    truth_peaks = load_peaks(truth_path, track_id);
    auto pred_rows = io::read_svalue_csv(sv_pred_path);
    auto truth_rows = io::read_svalue_csv(sv_truth_path);
    // Align by frame number: evaluate over the common frames.
    std::map<long, double> truth_by_frame;
    for (const auto& r : truth_rows) truth_by_frame[r.frame] = r.s_value;
    for (const auto& r : pred_rows) {
      auto it = truth_by_frame.find(r.frame);
      if (it == truth_by_frame.end()) continue;
      pred_s.push_back(r.s_value);
      truth_s.push_back(it->second);
    }
  } catch (const Error& e) {
    return fail(kExitData, e.what());
  }
  try {
    io::write_json(out_path,
                   io::stroke_report_json(metrics::stroke_report(
                       pred_peaks, truth_peaks, pred_s, truth_s)));
  } catch (const metrics::EmptyPeaks& e) {
    return fail(kExitData, e.what());
  } catch (const Error& e) {
    return fail(kExitData, e.what());
  }
  return 0;
}

int run_pipeline(const std::string& detections_path,
                 const std::string& svalues_dir, double fps,
                 const std::string& out_dir) {
  const std::filesystem::path out(out_dir);
  std::filesystem::create_directories(out);

  std::vector<io::DetectionRow> rows;
  try {
    rows = io::read_detection_csv(detections_path);
  } catch (const Error& e) {
    return fail(kExitData, e.what());
  }
  Tracker tracker;
  std::vector<Track> tracks;
  try {
    const auto detections = io::to_detections(rows);
    size_t i = 0;
    while (i < detections.size()) {
      const long frame = detections[i].frame;
      std::vector<Detection> frame_dets;
      while (i < detections.size() && detections[i].frame == frame) {
        frame_dets.push_back(detections[i++]);
      }
      tracker.step(frame, frame_dets);
    }
    tracks = tracker.finalize();
  } catch (const OutOfOrderFrame& e) {
    return fail(kExitData, e.what());
  }
  io::write_detection_csv(out / "tracks.csv", io::track_rows(tracks));

  // Map per-track s-value files by the id embedded in the filename.
  std::map<int, std::filesystem::path> svalue_files;
  const std::regex name_pattern(R"(track_(\d+)\.csv)");
  if (!svalues_dir.empty() && std::filesystem::is_directory(svalues_dir)) {
    for (const auto& entry :
         std::filesystem::directory_iterator(svalues_dir)) {
      std::smatch m;
      const std::string name = entry.path().filename().string();
      if (std::regex_match(name, m, name_pattern)) {
        svalue_files[std::stoi(m[1])] = entry.path();
      }
    }
  }

  json summary;
  summary["fps"] = io::round_sig(fps);
  json track_list = json::array();
  for (const Track& track : tracks) {
    json entry;
    entry["track_id"] = track.track_id;
    entry["lane"] = track.lane;
    entry["frames"] = static_cast<long>(track.entries.size());
    const auto it = svalue_files.find(track.track_id);
    if (it == svalue_files.end()) {
      entry["status"] = "no-svalues";
      track_list.push_back(std::move(entry));
      continue;
    }
    try {
      const auto series =
          io::to_series(io::read_svalue_csv(it->second), fps, track.track_id);
      const stroke::StrokeSeries result =
          stroke::process_series(series, stroke::FilterSpec{8, 3.0, fps});
      io::write_json(out / "strokes" /
                         ("track_" + std::to_string(track.track_id) + ".json"),
                     io::stroke_series_json(result));
      entry["status"] = "ok";
      entry["n_peaks"] = static_cast<long>(result.peak_positions.size());
      if (!result.rates.empty()) {
        double sum = 0.0;
        for (const auto& r : result.rates) sum += r.strokes_per_min;
        entry["mean_spm"] =
            io::round_sig(sum / static_cast<double>(result.rates.size()));
      }
    } catch (const stroke::SignalTooShort&) {
      entry["status"] = "signal-too-short";
    } catch (const stroke::EmptySwimmingRegion&) {
      entry["status"] = "no-swimming-frames";
    } catch (const Error& e) {
      entry["status"] = std::string("error: ") + e.what();
    }
    track_list.push_back(std::move(entry));
  }
  summary["tracks"] = std::move(track_list);
  io::write_json(out / "summary.json", summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Swimmer tracking and stroke-rate analytics"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", detections_path, out_path;
  std::string svalues_path, gt_path, hyp_path;
  std::string pred_path, truth_path, sv_pred_path, sv_truth_path, svalues_dir;
  double fps = 30.0;
  int track_id = -1;

  auto* simulate = app.add_subcommand(
      "simulate", "Generate a synthetic race fixture");
  simulate->add_option("--config", config_path, "SimConfig JSON")->required();
  simulate->add_option("--out-dir", out_dir, "Output directory");

  auto* track = app.add_subcommand("track", "Run the tracker over detections");
  track->add_option("--detections", detections_path, "Detection CSV")
      ->required();
  track->add_option("--config", config_path, "TrackerConfig JSON");
  track->add_option("--out", out_path, "Output track CSV")->required();

  auto* strokes = app.add_subcommand(
      "strokes", "Extract stroke peaks and rates from an s-value series");
  strokes->add_option("--svalues", svalues_path, "S-value CSV")->required();
  strokes->add_option("--fps", fps, "Frames per second");
  strokes->add_option("--out", out_path, "Output JSON")->required();

  auto* eval_mot = app.add_subcommand("eval-mot", "Tracking metrics");
  eval_mot->add_option("--gt", gt_path, "Ground-truth track CSV")->required();
  eval_mot->add_option("--hyp", hyp_path, "Hypothesis track CSV")->required();
  eval_mot->add_option("--out", out_path, "Output JSON")->required();

  auto* eval_stroke = app.add_subcommand("eval-stroke", "Stroke metrics");
  eval_stroke->add_option("--pred", pred_path, "Predicted peaks JSON")
      ->required();
  eval_stroke->add_option("--truth", truth_path, "Truth peaks JSON")
      ->required();
  eval_stroke->add_option("--svalues-pred", sv_pred_path, "Predicted s CSV")
      ->required();
  eval_stroke->add_option("--svalues-truth", sv_truth_path, "Truth s CSV")
      ->required();
  eval_stroke->add_option("--out", out_path, "Output JSON")->required();
  eval_stroke->add_option("--track-id", track_id,
                          "Track to select from a multi-track peaks file");

  auto* pipeline = app.add_subcommand(
      "pipeline", "track + strokes + per-track summary");
  pipeline->add_option("--detections", detections_path, "Detection CSV")
      ->required();
  pipeline->add_option("--svalues-dir", svalues_dir,
                       "Directory of track_<id>.csv s-value files");
  pipeline->add_option("--fps", fps, "Frames per second");
  pipeline->add_option("--out-dir", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (simulate->parsed()) return run_simulate(config_path, out_dir);
    if (track->parsed()) return run_track(detections_path, config_path,
                                          out_path);
    if (strokes->parsed()) return run_strokes(svalues_path, fps, out_path);
    if (eval_mot->parsed()) return run_eval_mot(gt_path, hyp_path, out_path);
    if (eval_stroke->parsed()) {
      return run_eval_stroke(pred_path, truth_path, sv_pred_path,
                             sv_truth_path, out_path, track_id);
    }
    if (pipeline->parsed()) {
      return run_pipeline(detections_path, svalues_dir, fps, out_dir);
    }
  } catch (const Error& e) {
    return fail(kExitData, e.what());
  } catch (const std::exception& e) {
    return fail(1, e.what());
  }
  return 0;
}
