#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "svbev/camera_rig.hpp"
#include "svbev/detection.hpp"
#include "svbev/rng.hpp"
#include "svbev/vector_types.hpp"

namespace svbev {

struct GroundTruthVehicle {
  uint64_t id = 0;
  GroundPoint position;  // P*
  double heading = 0.0;  // phi*, radians
  std::string type_name;
};

/// Perturbations applied when projecting truth into detection records. The
/// slope gradient tilts the true ground plane about the ego y-axis while the
/// pipeline keeps assuming z = 0. Identical seed, identical output.
struct NoiseSpec {
  double pixel_sigma = 0.0;      // Gaussian, pixels
  bool quantize = false;         // round box corners to integer pixels
  double drop_probability = 0.0; // per wheel box (occlusion stand-in)
  double slope_gradient = 0.0;   // dimensionless rise/run
  uint64_t seed = 0;
};

std::vector<std::string> noise_spec_violations(const NoiseSpec& noise);

/// All six physical contact points of a vehicle on flat ground.
struct VehicleContacts {
  GroundPoint fb, rb;
  GroundPoint fw_left, fw_right;
  GroundPoint rw_left, rw_right;
};

/// Bumpers at +-l/2 along the heading; wheels at +-(l/2 - fo) and -(l/2 - ro)
/// longitudinally, +-w/2 laterally.
VehicleContacts true_contact_points(const GroundTruthVehicle& v, const VehicleTypeSpec& spec);

/// What each camera saw of one vehicle (contact kinds it emitted).
struct VehicleVisibility {
  uint64_t vehicle_id = 0;
  std::array<std::vector<ContactPointKind>, kChannelCount> parts_per_channel;

  bool visible() const;
  std::vector<Channel> observing_channels() const;
  /// The union of visible parts supports at least one pose case (the
  /// regressed heading is always rendered alongside a vehicle box).
  bool reconstructible() const;
};

struct RenderedScene {
  std::array<DetectionRecord, kChannelCount> records;
  std::vector<VehicleVisibility> visibility;  // parallel to the input scene
  /// Provenance: per channel, the truth vehicle id of each emitted box.
  std::array<std::vector<uint64_t>, kChannelCount> box_owners;
};

/// Forward model: projects every camera-facing contact point, builds part
/// boxes whose bottom-edge midpoints sit on the projections, hulls them into
/// vehicle boxes, and attaches type labels plus (exact) regressed headings.
/// Wheels of a side are emitted only when that side faces the camera; a
/// bumper only when the camera is beyond that end of the vehicle.
RenderedScene render_detections(const std::vector<GroundTruthVehicle>& scene,
                                const CameraRig& rig, const VehicleCatalog& catalog,
                                const NoiseSpec& noise, uint64_t frame_id);

/// Scene sampling region and rejection margins. Poses are uniform over an
/// annulus of center distances; rejected configurations are those the paper's
/// geometry implicitly excludes: footprint overlaps, side tests without
/// margin, observers that would disagree about the visible side, part boxes
/// that would associate to a foreign vehicle, and vehicles visible only
/// through an unusable fragment of their contact points.
struct SceneSamplerConfig {
  double r_min = 1.9;
  double r_max = 5.0;
  double footprint_margin = 0.5;   // inflation for overlap rejection, meters
  double side_margin = 0.08;       // minimum |sin(heading - azimuth)|
  double proximity_gate_m = 0.5;   // must match the pipeline's fusion gate
  int attempts_per_vehicle = 60;
  /// Optional placement band overrides (used by the slope experiments).
  std::optional<std::pair<double, double>> x_range;
  std::optional<std::pair<double, double>> y_abs_range;
  /// Restricts sampled types; empty means the whole catalog.
  std::vector<std::string> allowed_types;
};

/// Places up to target_count vehicles (fewer when the region saturates).
std::vector<GroundTruthVehicle> sample_scene(int target_count, const CameraRig& rig,
                                             const VehicleCatalog& catalog, Rng& rng,
                                             const SceneSamplerConfig& config = {});

struct EvalThresholds {
  double x_gate_m = 0.25;
  std::array<double, 3> y_gates_m = {0.20, 0.40, 0.50};
  std::array<double, 2> interval_bounds_m = {2.0, 3.0};  // 0-2, 2-3, 3+
  double match_gate_m = 2.0;
};

struct TargetError {
  uint64_t truth_id = 0;
  uint64_t estimate_id = 0;
  double distance_m = 0.0;  // truth center distance from ego origin
  double x_error_m = 0.0;   // signed
  double y_error_m = 0.0;   // signed
  double heading_error_rad = 0.0;  // wrapped, signed
  int interval = 0;         // distance interval index
  bool x_qualified = false;
  bool y_qualified = false;
};

struct ErrorReport {
  EvalThresholds thresholds;
  std::vector<TargetError> matched;
  std::vector<uint64_t> missed_truth_ids;
  std::vector<uint64_t> false_positive_ids;

  size_t x_qualified_count() const;
  std::array<size_t, 3> y_interval_counts() const;
  std::array<size_t, 3> y_interval_qualified() const;
  double x_qualification_rate() const;  // 1.0 when no targets matched
  std::array<double, 3> y_qualification_rates() const;
};

/// Distance from the ego origin to the vehicle's nearest true contact point;
/// falls back to the center distance for types missing from the catalog.
/// This is the measure the distance intervals bin on.
double truth_distance(const GroundTruthVehicle& v, const VehicleCatalog& catalog);

/// Matches estimates to truth by nearest center under the match gate and
/// scores positioning errors against the per-axis thresholds.
ErrorReport evaluate(const std::vector<BevBox>& estimates,
                     const std::vector<GroundTruthVehicle>& truth,
                     const VehicleCatalog& catalog, const EvalThresholds& thresholds = {});

}  // namespace svbev
