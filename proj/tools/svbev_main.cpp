// svbev: geometric surround-view BEV perception over recorded detection
// streams, plus the synthetic forward-projection harness used to verify it.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "svbev/camera_rig.hpp"
#include "svbev/pipeline.hpp"
#include "svbev/stream_io.hpp"
#include "svbev/svg_render.hpp"
#include "svbev/synth_oracle.hpp"
#include "svbev/vehicle_catalog.hpp"

namespace {

using namespace svbev;

std::string config_path_or_env(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("SVBEV_CONFIG");
  return env ? env : "";
}

PipelineConfig load_config_or_default(const std::string& flag_value) {
  const std::string path = config_path_or_env(flag_value);
  if (path.empty()) return PipelineConfig{};
  return load_pipeline_config_file(path);
}

int cmd_run(const std::string& calib, const std::string& catalog_path,
            const std::string& config_path, const std::string& in, const std::string& out) {
  CameraRig rig = load_calibration_file(calib);
  VehicleCatalog catalog = VehicleCatalog::from_file(catalog_path);
  Pipeline pipeline(std::move(rig), std::move(catalog), load_config_or_default(config_path));

  const std::vector<DetectionFrame> frames = read_detection_stream(read_text_file(in));
  std::vector<BevMapFrame> map;
  map.reserve(frames.size());
  for (const DetectionFrame& frame : frames) {
    FrameResult result = pipeline.process_frame(frame.records);
    map.push_back({result.frame_id, std::move(result.bev_boxes)});
  }
  write_text_file(out, write_bev_map(map));
  return 0;
}

int cmd_synth(const std::string& calib, const std::string& catalog_path, const std::string& in,
              const std::string& out, std::string truth_path, const NoiseSpec& noise) {
  CameraRig rig = load_calibration_file(calib);
  VehicleCatalog catalog = VehicleCatalog::from_file(catalog_path);
  for (const std::string& v : noise_spec_violations(noise)) {
    throw ConfigError(ConfigError::Kind::BadValue, "noise: " + v);
  }
  if (truth_path.empty()) truth_path = out + ".truth.jsonl";

  const std::vector<SceneFrame> scene = read_scene(read_text_file(in));
  std::vector<DetectionFrame> frames;
  TruthDocument truth;
  truth.noise = noise;
  for (const SceneFrame& sf : scene) {
    RenderedScene rendered = render_detections(sf.vehicles, rig, catalog, noise, sf.frame_id);
    frames.push_back({sf.frame_id, std::move(rendered.records)});
    TruthFrame tf;
    tf.frame_id = sf.frame_id;
    for (size_t i = 0; i < sf.vehicles.size(); ++i) {
      const VehicleVisibility& vis = rendered.visibility[i];
      tf.vehicles.push_back({sf.vehicles[i], vis.visible(), vis.observing_channels()});
    }
    truth.frames.push_back(std::move(tf));
  }
  write_text_file(out, write_detection_stream(frames));
  write_text_file(truth_path, write_truth(truth));
  return 0;
}

int cmd_eval(const std::string& catalog_path, const std::string& in,
             const std::string& truth_path, const std::string& out,
             const EvalThresholds& thresholds) {
  const VehicleCatalog catalog = VehicleCatalog::from_file(catalog_path);
  const std::vector<BevMapFrame> map = read_bev_map(read_text_file(in));
  const TruthDocument truth = read_truth(read_text_file(truth_path));
  if (map.size() != truth.frames.size()) {
    throw ConfigError(ConfigError::Kind::BadValue, "eval: frame count mismatch between map and truth");
  }
  EvalDocument doc;
  doc.thresholds = thresholds;
  for (size_t i = 0; i < map.size(); ++i) {
    if (map[i].frame_id != truth.frames[i].frame_id) {
      throw ConfigError(ConfigError::Kind::BadValue,
                        "eval: frame id mismatch at index " + std::to_string(i));
    }
    std::vector<GroundTruthVehicle> visible_truth;
    for (const TruthVehicle& tv : truth.frames[i].vehicles) {
      if (tv.visible) visible_truth.push_back(tv.vehicle);
    }
    doc.append_frame(map[i].frame_id,
                     evaluate(map[i].targets, visible_truth, catalog, thresholds));
  }
  write_text_file(out + ".json", write_eval_report_json(doc));
  write_text_file(out + ".txt", write_eval_report_text(doc));
  return 0;
}

int cmd_render(const std::string& in, const std::string& out_dir, const std::string& format) {
  const std::vector<BevMapFrame> map = read_bev_map(read_text_file(in));
  std::filesystem::create_directories(out_dir);
  for (const BevMapFrame& frame : map) {
    char name[64];
    std::snprintf(name, sizeof(name), "frame_%06llu.%s",
                  static_cast<unsigned long long>(frame.frame_id),
                  format == "text" ? "txt" : "svg");
    const std::string content =
        format == "text" ? render_frame_text(frame) : render_frame_svg(frame);
    write_text_file((std::filesystem::path(out_dir) / name).string(), content);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"surround-view BEV vehicle perception (geometric pipeline + synthetic oracle)"};
  app.require_subcommand(1);

  std::string calib, catalog, config, in, out, truth, format = "svg";
  NoiseSpec noise;
  EvalThresholds thresholds;

  CLI::App* run = app.add_subcommand("run", "process a detection stream into a BEV vector map");
  run->add_option("--calib", calib, "calibration document")->required();
  run->add_option("--catalog", catalog, "vehicle type catalog")->required();
  run->add_option("--config", config, "pipeline config (or env SVBEV_CONFIG)");
  run->add_option("--in", in, "detection stream (jsonl)")->required();
  run->add_option("--out", out, "output BEV map (jsonl)")->required();

  CLI::App* synth = app.add_subcommand("synth", "project a scene file into a detection stream");
  synth->add_option("--calib", calib, "calibration document")->required();
  synth->add_option("--catalog", catalog, "vehicle type catalog")->required();
  synth->add_option("--in", in, "scene file (json)")->required();
  synth->add_option("--out", out, "output detection stream (jsonl)")->required();
  synth->add_option("--truth", truth, "truth sidecar path (default: <out>.truth.jsonl)");
  synth->add_option("--seed", noise.seed, "random seed");
  synth->add_option("--noise-px", noise.pixel_sigma, "Gaussian pixel noise sigma");
  synth->add_flag("--quantize", noise.quantize, "round part boxes to integer pixels");
  synth->add_option("--drop-prob", noise.drop_probability, "per-part drop probability");
  synth->add_option("--slope", noise.slope_gradient, "true ground slope gradient");

  CLI::App* eval = app.add_subcommand("eval", "score a BEV map against a truth sidecar");
  eval->add_option("--catalog", catalog, "vehicle type catalog")->required();
  eval->add_option("--in", in, "BEV map (jsonl)")->required();
  eval->add_option("--truth", truth, "truth sidecar (jsonl)")->required();
  eval->add_option("--out", out, "report path prefix (.json/.txt appended)")->required();
  eval->add_option("--gate-x", thresholds.x_gate_m, "x qualification gate, meters");
  eval->add_option("--gate-y0", thresholds.y_gates_m[0], "y gate for the nearest interval");
  eval->add_option("--gate-y1", thresholds.y_gates_m[1], "y gate for the middle interval");
  eval->add_option("--gate-y2", thresholds.y_gates_m[2], "y gate for the farthest interval");

  CLI::App* render = app.add_subcommand("render", "draw a BEV map as one file per frame");
  render->add_option("--in", in, "BEV map (jsonl)")->required();
  render->add_option("--out", out, "output directory")->required();
  render->add_option("--format", format, "text or svg")
      ->check(CLI::IsMember({"text", "svg"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(calib, catalog, config, in, out);
    if (synth->parsed()) return cmd_synth(calib, catalog, in, out, truth, noise);
    if (eval->parsed()) return cmd_eval(catalog, in, truth, out, thresholds);
    if (render->parsed()) return cmd_render(in, out, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
