#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "svbev/branch_adapters.hpp"
#include "svbev/camera_rig.hpp"
#include "svbev/detection.hpp"
#include "svbev/errors.hpp"
#include "svbev/reid_fusion.hpp"
#include "svbev/vector_types.hpp"

namespace svbev {

struct PipelineConfig {
  AdapterConfig adapter;
  FusionConfig fusion;
};

/// Loads a pipeline config document; defaults apply for absent fields.
PipelineConfig load_pipeline_config(const std::string& json_text);
PipelineConfig load_pipeline_config_file(const std::string& path);

struct StageTimings {
  uint64_t adapters_us = 0;     // branch extraction + stage-1 fusion
  uint64_t assign_ids_us = 0;   // ReID stage 2
  uint64_t merge_us = 0;        // ReID stage 3
  uint64_t bev_us = 0;          // pose recovery + corners
  uint64_t total_us = 0;
};

struct FrameDiagnostics {
  uint32_t dropped_contact_points = 0;
  uint32_t dropped_part_boxes = 0;
  uint32_t unfused_vectors = 0;   // vectors with empty geometry after assembly
  uint32_t pose_failures = 0;     // vectors that produced no BevBox
  std::vector<std::string> notes;
};

struct FrameResult {
  uint64_t frame_id = 0;
  std::vector<BevBox> bev_boxes;
  std::vector<MultidimensionalVector> vectors;  // final merged vectors
  StageTimings stage_timings;
  FrameDiagnostics diagnostics;
};

/// Frame-loop orchestration: adapters -> ReID stages -> BEV generation, with
/// id continuity across frames. One owner per instance; frames are submitted
/// sequentially. Per-target errors degrade to diagnostics, never the frame.
class Pipeline {
 public:
  Pipeline(CameraRig rig, VehicleCatalog catalog, PipelineConfig config = {});

  /// Records must all carry the same frame_id (empty records are fine).
  FrameResult process_frame(const std::array<DetectionRecord, kChannelCount>& records);

  /// Drops id-continuity state and restarts the id counter.
  void reset();

  const CameraRig& rig() const { return rig_; }
  const VehicleCatalog& catalog() const { return catalog_; }
  const PipelineConfig& config() const { return config_; }

 private:
  CameraRig rig_;
  VehicleCatalog catalog_;
  PipelineConfig config_;
  IdAllocator allocator_;
  std::array<std::vector<MultidimensionalVector>, kChannelCount> prior_;
};

}  // namespace svbev
