#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "svbev/detection.hpp"
#include "svbev/vector_types.hpp"

namespace svbev {

struct AdapterConfig {
  double score_threshold = 0.3;
  /// Bound to untyped vehicles so the pose formulas stay computable.
  /// Ignored when strict_typing is set (untyped vehicles stay untyped).
  std::string fallback_type = "car";
  bool strict_typing = false;
  /// When set and a vehicle has no bumper box, synthesize FB/RB from the
  /// vehicle box bottom-edge midpoint, oriented by the regressed heading.
  bool synthesize_bumper_points = false;
};

struct AdapterDiagnostics {
  uint32_t dropped_contact_points = 0;  // IPM failures (per point)
  uint32_t dropped_part_boxes = 0;      // parts with no owning vehicle
  uint32_t empty_geometry_vectors = 0;  // vehicles with no geometry at all
  std::vector<std::string> notes;
};

/// Midpoint of the bottom edge of a bounding box (top-left origin).
inline PixelPoint contact_point_from_bbox(const BBox& b) {
  return {b.x + b.w / 2.0, b.y + b.l};
}

/// Per-vehicle part assignment: for each vehicle box index, the chosen part
/// box index per contact kind (if any).
struct PartAssignment {
  std::vector<size_t> vehicle_box_indices;
  /// Parallel to vehicle_box_indices.
  std::vector<std::array<std::optional<size_t>, kContactKindCount>> parts;
};

/// Assigns each part box to the vehicle box containing its center with the
/// largest intersection-over-part-area; ties go to the higher vehicle score,
/// then the lower vehicle bbox X. At most one part per kind per vehicle
/// (highest score, then lower bbox X, then lower bbox Y).
PartAssignment associate_parts(const DetectionRecord& record, double score_threshold,
                               AdapterDiagnostics* diag = nullptr);

/// Contact-point branch: one vector per vehicle box with IPM'd contact points.
std::vector<MultidimensionalVector> make_contact_vectors(const DetectionRecord& record,
                                                         const FisheyeCamera& camera,
                                                         const AdapterConfig& config,
                                                         AdapterDiagnostics* diag = nullptr);

/// Type branch: vectors carrying type labels bound to catalog dims/overhangs.
std::vector<MultidimensionalVector> make_type_vectors(const DetectionRecord& record,
                                                      const VehicleCatalog& catalog,
                                                      const AdapterConfig& config,
                                                      AdapterDiagnostics* diag = nullptr);

/// Heading branch: vectors carrying the regressed heading.
std::vector<MultidimensionalVector> make_heading_vectors(const DetectionRecord& record,
                                                         const AdapterConfig& config);

/// Full per-channel assembly: branch extraction, stage-1 fusion by bbox,
/// fallback typing, azimuth computation. Output sorted by bbox X then Y.
std::vector<MultidimensionalVector> assemble_channel_vectors(
    const DetectionRecord& record, const FisheyeCamera& camera,
    const VehicleCatalog& catalog, const AdapterConfig& config,
    AdapterDiagnostics* diag = nullptr);

}  // namespace svbev
