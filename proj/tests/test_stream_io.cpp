#include <doctest.h>

#include "helpers.hpp"
#include "svbev/stream_io.hpp"
#include "svbev/synth_oracle.hpp"

using namespace svbev;

namespace {

std::vector<DetectionFrame> sample_frames() {
  Rng rng(51);
  const auto scene = sample_scene(4, svbev::test::default_rig(),
                                  svbev::test::default_catalog(), rng);
  NoiseSpec noise;
  noise.pixel_sigma = 0.7;
  noise.seed = 9;
  std::vector<DetectionFrame> frames;
  for (uint64_t f = 0; f < 3; ++f) {
    frames.push_back({f, render_detections(scene, svbev::test::default_rig(),
                                           svbev::test::default_catalog(), noise, f)
                             .records});
  }
  return frames;
}

}  // namespace

TEST_CASE("detection stream: write/read/write is byte-stable") {
  const std::string once = write_detection_stream(sample_frames());
  const auto parsed = read_detection_stream(once);
  const std::string twice = write_detection_stream(parsed);
  CHECK(once == twice);
  CHECK(parsed.size() == 3);
}

TEST_CASE("detection stream: strict parsing") {
  CHECK_THROWS_AS(read_detection_stream(""), ConfigError);
  CHECK_THROWS_AS(read_detection_stream("{\"format\":\"other\",\"version\":1}\n"), ConfigError);
  CHECK_THROWS_AS(read_detection_stream("{\"format\":\"svbev-detections\",\"version\":2}\n"),
                  ConfigError);
  // Unknown field inside a record.
  const std::string bad =
      "{\"format\":\"svbev-detections\",\"version\":1}\n"
      "{\"frame_id\":0,\"channel\":\"front\",\"boxes\":[],\"type_labels\":[],"
      "\"heading_estimates\":[],\"bogus\":1}\n";
  CHECK_THROWS_AS(read_detection_stream(bad), ConfigError);
  // Descending frame ids.
  const std::string out_of_order =
      "{\"format\":\"svbev-detections\",\"version\":1}\n"
      "{\"frame_id\":2,\"channel\":\"front\",\"boxes\":[],\"type_labels\":[],"
      "\"heading_estimates\":[]}\n"
      "{\"frame_id\":1,\"channel\":\"front\",\"boxes\":[],\"type_labels\":[],"
      "\"heading_estimates\":[]}\n";
  CHECK_THROWS_AS(read_detection_stream(out_of_order), ConfigError);
}

TEST_CASE("detection stream: angles are degrees in the file, radians in memory") {
  DetectionFrame frame;
  frame.frame_id = 0;
  for (Channel c : kAllChannels) {
    auto& r = frame.records[size_t(channel_index(c))];
    r.channel = c;
    r.frame_id = 0;
  }
  auto& record = frame.records[0];
  record.boxes.push_back({PartClass::Vehicle, {0.0, 0.0, 100.0, 100.0}, 0.9});
  record.heading_estimates.push_back({{0.0, 0.0, 100.0, 100.0}, kPi / 2.0, 0.9});
  const std::string text = write_detection_stream({frame});
  CHECK(text.find("\"heading_deg\":90.000000") != std::string::npos);
  const auto parsed = read_detection_stream(text);
  CHECK(parsed.front().records[0].heading_estimates.front().heading ==
        doctest::Approx(kPi / 2.0).epsilon(1e-12));
}

TEST_CASE("truth sidecar: noise spec and frames round-trip") {
  TruthDocument doc;
  doc.noise.pixel_sigma = 1.0;
  doc.noise.quantize = true;
  doc.noise.drop_probability = 0.25;
  doc.noise.slope_gradient = 0.05;
  doc.noise.seed = 1234;
  TruthFrame frame;
  frame.frame_id = 0;
  frame.vehicles.push_back(
      {{7, {3.25, -1.5}, deg_to_rad(85.0), "suv"}, true, {Channel::Front, Channel::Right}});
  frame.vehicles.push_back({{8, {9.0, 9.0}, 0.0, "bus"}, false, {}});
  doc.frames.push_back(frame);

  const std::string once = write_truth(doc);
  const TruthDocument parsed = read_truth(once);
  CHECK(write_truth(parsed) == once);
  CHECK(parsed.noise.quantize);
  CHECK(parsed.noise.seed == 1234);
  REQUIRE(parsed.frames.size() == 1);
  CHECK(parsed.frames.front().vehicles.front().channels.size() == 2);
  CHECK(!parsed.frames.front().vehicles.back().visible);
}

TEST_CASE("bev map: round-trip and unit handling") {
  BevMapFrame frame;
  frame.frame_id = 2;
  BevBox box;
  box.obj_id = 3;
  box.type_name = "car";
  box.center = {1.5, -0.75};
  box.heading = deg_to_rad(30.0);
  box.a = {3.0, 0.0};
  box.b = {-1.0, 1.0};
  box.c = {3.0, -2.0};
  box.d = {-1.0, -1.5};
  frame.targets.push_back(box);

  const std::string once = write_bev_map({frame});
  CHECK(once.find("\"heading_deg\":30.000000") != std::string::npos);
  const auto parsed = read_bev_map(once);
  CHECK(write_bev_map(parsed) == once);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed.front().targets.front().heading ==
        doctest::Approx(deg_to_rad(30.0)).epsilon(1e-12));

  CHECK_THROWS_AS(read_bev_map("{\"format\":\"svbev-bev-map\",\"version\":1}\n"), ConfigError);
}

TEST_CASE("scene file: round-trip") {
  SceneFrame frame;
  frame.frame_id = 0;
  frame.vehicles.push_back({1, {2.0, 1.0}, deg_to_rad(30.0), "car"});
  frame.vehicles.push_back({2, {-3.0, -2.0}, deg_to_rad(-90.0), "van"});
  const std::string once = write_scene({frame});
  const auto parsed = read_scene(once);
  CHECK(write_scene(parsed) == once);
  REQUIRE(parsed.size() == 1);
  CHECK(parsed.front().vehicles.size() == 2);
  CHECK(parsed.front().vehicles[1].type_name == "van");

  CHECK_THROWS_AS(read_scene("{\"format\":\"svbev-scene\",\"version\":1}"), ConfigError);
}

TEST_CASE("eval report: json round-trip and text header echo") {
  EvalDocument doc;
  doc.thresholds.x_gate_m = 0.3;  // custom gate, echoed everywhere
  ErrorReport report;
  report.thresholds = doc.thresholds;
  TargetError te;
  te.truth_id = 1;
  te.estimate_id = 2;
  te.distance_m = 2.4;
  te.x_error_m = 0.1;
  te.y_error_m = -0.05;
  te.heading_error_rad = deg_to_rad(1.5);
  te.interval = 1;
  te.x_qualified = true;
  te.y_qualified = true;
  report.matched.push_back(te);
  report.missed_truth_ids.push_back(4);
  doc.append_frame(0, report);

  const std::string once = write_eval_report_json(doc);
  const EvalDocument parsed = read_eval_report_json(once);
  CHECK(write_eval_report_json(parsed) == once);
  CHECK(parsed.thresholds.x_gate_m == 0.3);
  CHECK(parsed.targets.size() == 1);
  CHECK(parsed.misses.size() == 1);

  const std::string text = write_eval_report_text(doc);
  CHECK(text.find("x <= 0.30 m") != std::string::npos);
  CHECK(text.find("matched: 1") != std::string::npos);
}
