#include "svbev/pipeline.hpp"

#include <chrono>

#include "json_util.hpp"
#include "svbev/bev_generator.hpp"

namespace svbev {

namespace {

using Clock = std::chrono::steady_clock;

uint64_t elapsed_us(Clock::time_point from, Clock::time_point to) {
  return static_cast<uint64_t>(
      std::chrono::duration_cast<std::chrono::microseconds>(to - from).count());
}

}  // namespace

PipelineConfig load_pipeline_config(const std::string& json_text) {
  using detail::json;
  json doc = detail::parse_document(json_text, "pipeline config");
  detail::check_format(doc, "pipeline config", "svbev-pipeline-config", 1);
  detail::require_keys(doc, "pipeline config", {"format", "version"},
                       {"score_threshold", "fallback_type", "strict_typing",
                        "synthesize_bumper_points", "fusion"});
  PipelineConfig config;
  config.adapter.score_threshold =
      detail::get_number_opt(doc, "pipeline config", "score_threshold", 0.3);
  if (doc.contains("fallback_type")) {
    config.adapter.fallback_type = detail::get_string(doc, "pipeline config", "fallback_type");
  }
  config.adapter.strict_typing =
      detail::get_bool_opt(doc, "pipeline config", "strict_typing", false);
  config.adapter.synthesize_bumper_points =
      detail::get_bool_opt(doc, "pipeline config", "synthesize_bumper_points", false);
  if (doc.contains("fusion")) {
    const json& fusion = detail::get_object(doc, "pipeline config", "fusion");
    detail::require_keys(fusion, "pipeline config.fusion", {},
                         {"proximity_gate_m", "alpha", "beta", "max_cluster_diameter_m"});
    config.fusion.proximity_gate_m =
        detail::get_number_opt(fusion, "fusion", "proximity_gate_m", 0.5);
    config.fusion.alpha = detail::get_number_opt(fusion, "fusion", "alpha", 0.5);
    config.fusion.beta = detail::get_number_opt(fusion, "fusion", "beta", 0.5);
    config.fusion.max_cluster_diameter_m =
        detail::get_number_opt(fusion, "fusion", "max_cluster_diameter_m", 2.0);
  }
  for (const std::string& v : fusion_config_violations(config.fusion)) {
    throw ConfigError(ConfigError::Kind::BadValue, "pipeline config: " + v);
  }
  if (config.adapter.score_threshold < 0.0 || config.adapter.score_threshold > 1.0) {
    throw ConfigError(ConfigError::Kind::BadValue,
                      "pipeline config: score_threshold outside [0, 1]");
  }
  return config;
}

PipelineConfig load_pipeline_config_file(const std::string& path) {
  return load_pipeline_config(read_text_file(path));
}

Pipeline::Pipeline(CameraRig rig, VehicleCatalog catalog, PipelineConfig config)
    : rig_(std::move(rig)), catalog_(std::move(catalog)), config_(config) {}

void Pipeline::reset() {
  allocator_.reset();
  for (auto& prior : prior_) prior.clear();
}

FrameResult Pipeline::process_frame(const std::array<DetectionRecord, kChannelCount>& records) {
  const uint64_t frame_id = records.front().frame_id;
  for (const DetectionRecord& r : records) {
    if (r.frame_id != frame_id) {
      throw PipelineError(PipelineError::Kind::MismatchedFrameIds,
                          "records disagree on frame_id: " + std::to_string(frame_id) +
                              " vs " + std::to_string(r.frame_id));
    }
  }

  FrameResult result;
  result.frame_id = frame_id;
  const auto t0 = Clock::now();

  // Branch extraction and stage-1 fusion, per channel in fixed order.
  AdapterDiagnostics adapter_diag;
  std::array<std::vector<MultidimensionalVector>, kChannelCount> channel_vectors;
  for (Channel channel : kAllChannels) {
    const size_t ch = static_cast<size_t>(channel_index(channel));
    channel_vectors[ch] = assemble_channel_vectors(records[ch], rig_.camera(channel),
                                                   catalog_, config_.adapter, &adapter_diag);
  }
  const auto t1 = Clock::now();

  // ReID stage 2: per-channel ids with frame-to-frame continuity.
  std::array<std::vector<MultidimensionalVector>, kChannelCount> identified;
  for (Channel channel : kAllChannels) {
    const size_t ch = static_cast<size_t>(channel_index(channel));
    identified[ch] = assign_channel_ids(std::move(channel_vectors[ch]), prior_[ch],
                                        config_.fusion, allocator_);
  }
  const auto t2 = Clock::now();

  // ReID stage 3: cross-channel merge into uniquely identified vectors.
  std::vector<std::vector<MultidimensionalVector>> per_channel(identified.begin(),
                                                               identified.end());
  result.vectors = merge_bev_targets(per_channel, config_.fusion);
  const auto t3 = Clock::now();

  // BEV generation; failures drop the target, not the frame.
  for (MultidimensionalVector& v : result.vectors) {
    const Result<PoseEstimate> pose = estimate_pose(v);
    if (!pose.ok()) {
      ++result.diagnostics.pose_failures;
      result.diagnostics.notes.push_back(
          "target " + std::to_string(v.obj_id.value_or(0)) +
          ": no pose (" + err_name(pose.error()) + ")");
      continue;
    }
    v.heading_geometric = pose.value().case_used == PoseCase::BumperOnly
                              ? v.heading_geometric
                              : std::optional<double>(pose.value().heading);
    VehicleTypeSpec spec;
    spec.type_name = v.vehicle_type.value_or("");
    spec.l = v.dims->l;
    spec.w = v.dims->w;
    spec.h = v.dims->h;
    spec.fo = v.overhangs->fo;
    spec.ro = v.overhangs->ro;
    result.bev_boxes.push_back(
        corners_from_pose(pose.value(), spec, v.obj_id.value_or(0), spec.type_name));
  }
  const auto t4 = Clock::now();

  result.diagnostics.dropped_contact_points = adapter_diag.dropped_contact_points;
  result.diagnostics.dropped_part_boxes = adapter_diag.dropped_part_boxes;
  result.diagnostics.unfused_vectors = adapter_diag.empty_geometry_vectors;
  for (std::string& note : adapter_diag.notes) {
    result.diagnostics.notes.push_back(std::move(note));
  }

  result.stage_timings.adapters_us = elapsed_us(t0, t1);
  result.stage_timings.assign_ids_us = elapsed_us(t1, t2);
  result.stage_timings.merge_us = elapsed_us(t2, t3);
  result.stage_timings.bev_us = elapsed_us(t3, t4);
  result.stage_timings.total_us = elapsed_us(t0, t4);

  prior_ = identified;
  return result;
}

}  // namespace svbev
