#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "svbev/detection.hpp"
#include "svbev/synth_oracle.hpp"
#include "svbev/vector_types.hpp"

namespace svbev {

// Line-delimited record formats with a versioned header line; one JSON object
// per line, fixed key order, floats as %.6f. Angles are degrees in files and
// radians in memory. Writers are byte-deterministic; parsers are strict and
// reject unknown fields, so every file round-trips through its own parser.

struct DetectionFrame {
  uint64_t frame_id = 0;
  std::array<DetectionRecord, kChannelCount> records;  // empty records allowed
};

std::string write_detection_stream(const std::vector<DetectionFrame>& frames);
std::vector<DetectionFrame> read_detection_stream(const std::string& text);

struct TruthVehicle {
  GroundTruthVehicle vehicle;
  bool visible = false;
  std::vector<Channel> channels;
};

struct TruthFrame {
  uint64_t frame_id = 0;
  std::vector<TruthVehicle> vehicles;
};

struct TruthDocument {
  NoiseSpec noise;
  std::vector<TruthFrame> frames;
};

std::string write_truth(const TruthDocument& doc);
TruthDocument read_truth(const std::string& text);

struct BevMapFrame {
  uint64_t frame_id = 0;
  std::vector<BevBox> targets;
};

std::string write_bev_map(const std::vector<BevMapFrame>& frames);
std::vector<BevMapFrame> read_bev_map(const std::string& text);

struct SceneFrame {
  uint64_t frame_id = 0;
  std::vector<GroundTruthVehicle> vehicles;
};

std::string write_scene(const std::vector<SceneFrame>& frames);
std::vector<SceneFrame> read_scene(const std::string& text);

/// Aggregated evaluation across frames.
struct EvalDocument {
  EvalThresholds thresholds;
  uint64_t frame_count = 0;
  std::vector<std::pair<uint64_t, TargetError>> targets;         // frame_id, error
  std::vector<std::pair<uint64_t, uint64_t>> misses;             // frame_id, truth_id
  std::vector<std::pair<uint64_t, uint64_t>> false_positives;    // frame_id, estimate_id

  void append_frame(uint64_t frame_id, const ErrorReport& report);
  size_t x_qualified_count() const;
  double x_rate() const;
  std::array<size_t, 3> y_counts() const;
  std::array<size_t, 3> y_qualified() const;
  std::array<double, 3> y_rates() const;
};

std::string write_eval_report_json(const EvalDocument& doc);
EvalDocument read_eval_report_json(const std::string& text);
/// Human-readable table with the thresholds echoed in the header.
std::string write_eval_report_text(const EvalDocument& doc);

}  // namespace svbev
