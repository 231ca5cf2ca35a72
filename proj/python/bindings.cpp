// bindings.cpp: pybind11 module exposing the tracking and stroke analytics
// operations to Python.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "swimtrack/assoc.hpp"
#include "swimtrack/core.hpp"
#include "swimtrack/io.hpp"
#include "swimtrack/kalman.hpp"
#include "swimtrack/metrics.hpp"
#include "swimtrack/simgen.hpp"
#include "swimtrack/stroke.hpp"
#include "swimtrack/tracker.hpp"

namespace py = pybind11;
using namespace swimtrack;

PYBIND11_MODULE(_swimtrack, m) {
  m.doc() = "Swimmer tracking and stroke-rate analytics";

  py::register_exception<Error>(m, "SwimtrackError");

  // --- core ---------------------------------------------------------------
  py::enum_<PoseClass>(m, "PoseClass")
      .value("ON_BLOCKS", PoseClass::OnBlocks)
      .value("DIVING", PoseClass::Diving)
      .value("SWIMMING", PoseClass::Swimming)
      .value("UNDERWATER", PoseClass::Underwater)
      .value("TURNING", PoseClass::Turning)
      .value("FINISHING", PoseClass::Finishing);

  py::class_<BoundingBox>(m, "BoundingBox")
      .def(py::init<double, double, double, double>(), py::arg("x"),
           py::arg("y"), py::arg("w"), py::arg("h"))
      .def_readwrite("x", &BoundingBox::x)
      .def_readwrite("y", &BoundingBox::y)
      .def_readwrite("w", &BoundingBox::w)
      .def_readwrite("h", &BoundingBox::h)
      .def("__repr__", [](const BoundingBox& b) {
        return "BoundingBox(x=" + std::to_string(b.x) +
               ", y=" + std::to_string(b.y) + ", w=" + std::to_string(b.w) +
               ", h=" + std::to_string(b.h) + ")";
      });

  py::class_<StateForm>(m, "StateForm")
      .def(py::init<double, double, double, double>(), py::arg("u"),
           py::arg("v"), py::arg("s"), py::arg("r"))
      .def_readwrite("u", &StateForm::u)
      .def_readwrite("v", &StateForm::v)
      .def_readwrite("s", &StateForm::s)
      .def_readwrite("r", &StateForm::r);

  py::class_<Detection>(m, "Detection")
      .def(py::init<>())
      .def(py::init([](long frame, const BoundingBox& box, double confidence,
                       PoseClass class_label, int lane) {
             return Detection{frame, box, confidence, class_label, lane};
           }),
           py::arg("frame"), py::arg("box"), py::arg("confidence") = 1.0,
           py::arg("class_label") = PoseClass::Swimming,
           py::arg("lane") = kNoLane)
      .def_readwrite("frame", &Detection::frame)
      .def_readwrite("box", &Detection::box)
      .def_readwrite("confidence", &Detection::confidence)
      .def_readwrite("class_label", &Detection::class_label)
      .def_readwrite("lane", &Detection::lane);

  py::enum_<TrackSource>(m, "TrackSource")
      .value("TRACKER", TrackSource::Tracker)
      .value("GROUND_TRUTH", TrackSource::GroundTruth);

  py::class_<TrackEntry>(m, "TrackEntry")
      .def(py::init<long, BoundingBox>(), py::arg("frame"), py::arg("box"))
      .def_readwrite("frame", &TrackEntry::frame)
      .def_readwrite("box", &TrackEntry::box);

  py::class_<Track>(m, "Track")
      .def(py::init<>())
      .def_readwrite("track_id", &Track::track_id)
      .def_readwrite("entries", &Track::entries)
      .def_readwrite("source", &Track::source)
      .def_readwrite("lane", &Track::lane);

  py::class_<SValueSample>(m, "SValueSample")
      .def(py::init<long, double, bool>(), py::arg("frame"), py::arg("s"),
           py::arg("swimming"))
      .def_readwrite("frame", &SValueSample::frame)
      .def_readwrite("s", &SValueSample::s)
      .def_readwrite("swimming", &SValueSample::swimming);

  py::class_<SValueSeries>(m, "SValueSeries")
      .def(py::init<>())
      .def_readwrite("track_id", &SValueSeries::track_id)
      .def_readwrite("fps", &SValueSeries::fps)
      .def_readwrite("samples", &SValueSeries::samples);

  m.def("iou", &iou, py::arg("a"), py::arg("b"));
  m.def("to_state_form", &to_state_form, py::arg("box"));
  m.def("from_state_form", &from_state_form, py::arg("state"));

  // --- kalman ---------------------------------------------------------------
  py::class_<kalman::KalmanConfig>(m, "KalmanConfig")
      .def(py::init<>())
      .def_readwrite("p0_scale", &kalman::KalmanConfig::p0_scale)
      .def_readwrite("q_scale", &kalman::KalmanConfig::q_scale)
      .def_readwrite("r_scale", &kalman::KalmanConfig::r_scale);

  py::class_<kalman::KalmanTrackState>(m, "KalmanTrackState")
      .def(py::init<>())
      .def_readwrite("x_hat", &kalman::KalmanTrackState::x_hat)
      .def_readwrite("P", &kalman::KalmanTrackState::P)
      .def_readwrite("frame", &kalman::KalmanTrackState::frame);

  m.def("kalman_init", &kalman::init, py::arg("box"), py::arg("config"),
        py::arg("frame") = 0);
  m.def("kalman_predict", &kalman::predict, py::arg("state"),
        py::arg("config"));
  m.def("kalman_update", &kalman::update, py::arg("state"),
        py::arg("measurement"), py::arg("config"));
  m.def("kalman_state_box", &kalman::state_box, py::arg("state"));

  // --- assoc ----------------------------------------------------------------
  py::class_<assoc::AssignmentResult>(m, "AssignmentResult")
      .def_readonly("matches", &assoc::AssignmentResult::matches)
      .def_readonly("unmatched_tracks",
                    &assoc::AssignmentResult::unmatched_tracks)
      .def_readonly("unmatched_detections",
                    &assoc::AssignmentResult::unmatched_detections);

  m.def("hungarian", &assoc::hungarian, py::arg("cost"));
  m.def("associate", &assoc::associate, py::arg("predicted"),
        py::arg("detected"), py::arg("iou_min") = 0.3);

  // --- tracker ----------------------------------------------------------------
  py::class_<TrackerConfig>(m, "TrackerConfig")
      .def(py::init<>())
      .def_readwrite("iou_min", &TrackerConfig::iou_min)
      .def_readwrite("max_age", &TrackerConfig::max_age)
      .def_readwrite("min_hits", &TrackerConfig::min_hits)
      .def_readwrite("kalman", &TrackerConfig::kalman);

  py::class_<Tracker>(m, "Tracker")
      .def(py::init<TrackerConfig>(), py::arg("config") = TrackerConfig{})
      .def("step", &Tracker::step, py::arg("frame"), py::arg("detections"))
      .def("finalize", &Tracker::finalize);

  py::class_<FrameBounds>(m, "FrameBounds")
      .def(py::init<double, double>(), py::arg("width"), py::arg("height"))
      .def_readwrite("width", &FrameBounds::width)
      .def_readwrite("height", &FrameBounds::height);

  m.def("crop_rects", &crop_rects, py::arg("track"), py::arg("pad"),
        py::arg("bounds") = std::nullopt);

  // --- stroke ----------------------------------------------------------------
  py::class_<stroke::FilterSpec>(m, "FilterSpec")
      .def(py::init<>())
      .def(py::init([](int order, double cutoff_hz, double fps) {
             return stroke::FilterSpec{order, cutoff_hz, fps};
           }),
           py::arg("order") = 8, py::arg("cutoff_hz") = 3.0,
           py::arg("fps") = 30.0)
      .def_readwrite("order", &stroke::FilterSpec::order)
      .def_readwrite("cutoff_hz", &stroke::FilterSpec::cutoff_hz)
      .def_readwrite("fps", &stroke::FilterSpec::fps);

  py::class_<stroke::RatePoint>(m, "RatePoint")
      .def_readonly("frame", &stroke::RatePoint::frame)
      .def_readonly("strokes_per_min", &stroke::RatePoint::strokes_per_min);

  py::class_<stroke::StrokeSeries>(m, "StrokeSeries")
      .def_readonly("track_id", &stroke::StrokeSeries::track_id)
      .def_readonly("peak_positions", &stroke::StrokeSeries::peak_positions)
      .def_readonly("rates", &stroke::StrokeSeries::rates);

  m.def("butterworth_lowpass", &stroke::butterworth_lowpass,
        py::arg("signal"), py::arg("spec"));
  m.def("extract_peaks", &stroke::extract_peaks, py::arg("smoothed"),
        py::arg("swimming"), py::arg("min_gap_frames") = 0.0);
  m.def("stroke_rates", &stroke::stroke_rates, py::arg("peaks"),
        py::arg("fps"));
  m.def("process_series", &stroke::process_series, py::arg("series"),
        py::arg("spec"));

  // --- metrics ----------------------------------------------------------------
  py::class_<metrics::PeakMatchResult>(m, "PeakMatchResult")
      .def_readonly("pairs", &metrics::PeakMatchResult::pairs)
      .def_readonly("unmatched_predicted",
                    &metrics::PeakMatchResult::unmatched_predicted)
      .def_readonly("unmatched_truth",
                    &metrics::PeakMatchResult::unmatched_truth);

  py::class_<metrics::StrokeReport>(m, "StrokeReport")
      .def_readonly("f1", &metrics::StrokeReport::f1)
      .def_readonly("asd", &metrics::StrokeReport::asd)
      .def_readonly("sdstd", &metrics::StrokeReport::sdstd)
      .def_readonly("delta", &metrics::StrokeReport::delta)
      .def_readonly("tp", &metrics::StrokeReport::tp)
      .def_readonly("fp", &metrics::StrokeReport::fp)
      .def_readonly("fn", &metrics::StrokeReport::fn);

  py::class_<metrics::GroundTruthAnnotation>(m, "GroundTruthAnnotation")
      .def(py::init([](long frame, int lane, const BoundingBox& box) {
             return metrics::GroundTruthAnnotation{frame, lane, box};
           }),
           py::arg("frame"), py::arg("lane"), py::arg("box"))
      .def_readwrite("frame", &metrics::GroundTruthAnnotation::frame)
      .def_readwrite("lane", &metrics::GroundTruthAnnotation::lane)
      .def_readwrite("box", &metrics::GroundTruthAnnotation::box);

  py::class_<metrics::MotReport>(m, "MotReport")
      .def_readonly("mota", &metrics::MotReport::mota)
      .def_readonly("mota_raw", &metrics::MotReport::mota_raw)
      .def_readonly("motp", &metrics::MotReport::motp)
      .def_readonly("idf1", &metrics::MotReport::idf1)
      .def_readonly("idp", &metrics::MotReport::idp)
      .def_readonly("idr", &metrics::MotReport::idr)
      .def_readonly("gt", &metrics::MotReport::gt)
      .def_readonly("mt", &metrics::MotReport::mt)
      .def_readonly("pt", &metrics::MotReport::pt)
      .def_readonly("ml", &metrics::MotReport::ml)
      .def_readonly("fp", &metrics::MotReport::fp)
      .def_readonly("fn", &metrics::MotReport::fn)
      .def_readonly("idsw", &metrics::MotReport::idsw);

  m.def("match_peaks", &metrics::match_peaks, py::arg("predicted"),
        py::arg("truth"), py::arg("tol") = 3.0);
  m.def("stroke_report", &metrics::stroke_report, py::arg("predicted_peaks"),
        py::arg("truth_peaks"), py::arg("predicted_svalues"),
        py::arg("truth_svalues"));
  m.def("interpolate_ground_truth", &metrics::interpolate_ground_truth,
        py::arg("sparse"));
  m.def("mot_report", &metrics::mot_report, py::arg("hypotheses"),
        py::arg("ground_truth"), py::arg("iou_match") = 0.5);

  // --- simgen ----------------------------------------------------------------
  py::class_<simgen::TurnWindow>(m, "TurnWindow")
      .def(py::init<double, double>(), py::arg("start_s"), py::arg("end_s"))
      .def_readwrite("start_s", &simgen::TurnWindow::start_s)
      .def_readwrite("end_s", &simgen::TurnWindow::end_s);

  py::class_<simgen::SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("n_lanes", &simgen::SimConfig::n_lanes)
      .def_readwrite("duration_s", &simgen::SimConfig::duration_s)
      .def_readwrite("fps", &simgen::SimConfig::fps)
      .def_readwrite("swimmer_speed", &simgen::SimConfig::swimmer_speed)
      .def_readwrite("stroke_freq_hz", &simgen::SimConfig::stroke_freq_hz)
      .def_readwrite("det_noise_px", &simgen::SimConfig::det_noise_px)
      .def_readwrite("miss_rate", &simgen::SimConfig::miss_rate)
      .def_readwrite("fp_rate", &simgen::SimConfig::fp_rate)
      .def_readwrite("s_noise", &simgen::SimConfig::s_noise)
      .def_readwrite("turn_windows", &simgen::SimConfig::turn_windows)
      .def_readwrite("seed", &simgen::SimConfig::seed);

  py::class_<simgen::SimOutput>(m, "SimOutput")
      .def_readonly("gt_tracks", &simgen::SimOutput::gt_tracks)
      .def_readonly("detections", &simgen::SimOutput::detections)
      .def_readonly("gt_svalues", &simgen::SimOutput::gt_svalues)
      .def_readonly("noisy_svalues", &simgen::SimOutput::noisy_svalues)
      .def_readonly("true_peaks", &simgen::SimOutput::true_peaks);

  m.def("generate", &simgen::generate, py::arg("config"));
}
