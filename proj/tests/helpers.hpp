#pragma once

#include <cmath>
#include <string>

#include "svbev/camera_rig.hpp"
#include "svbev/rng.hpp"
#include "svbev/vehicle_catalog.hpp"
#include "svbev/vector_types.hpp"

namespace svbev::test {

inline std::string data_path(const std::string& name) {
  return std::string(SVBEV_DATA_DIR) + "/" + name;
}

inline const CameraRig& default_rig() {
  static const CameraRig rig = load_calibration_file(data_path("calibration_default.json"));
  return rig;
}

inline const VehicleCatalog& default_catalog() {
  static const VehicleCatalog catalog =
      VehicleCatalog::from_file(data_path("vehicle_types.json"));
  return catalog;
}

/// Equidistant camera at (0, 0, 1) m facing +x, pitched down by `pitch_deg`.
inline FisheyeCamera pitched_test_camera(double pitch_deg = 45.0, double focal = 300.0,
                                         double fov_half_deg = 95.0) {
  const double p = deg_to_rad(pitch_deg);
  const double c = std::cos(p);
  const double s = std::sin(p);
  FisheyeCamera cam;
  cam.channel = Channel::Front;
  cam.fx = focal;
  cam.fy = focal;
  cam.principal = {320.0, 240.0};
  cam.distortion = DistortionModel::equidistant();
  // Columns: image right = -y_ego, image down = (-s, 0, -c), axis = (c, 0, -s).
  cam.rotation.m = {0.0, -s, c, -1.0, 0.0, 0.0, 0.0, -c, -s};
  cam.translation = {0.0, 0.0, 1.0};
  cam.fov_half_angle = deg_to_rad(fov_half_deg);
  return cam;
}

/// Independent truth layout: contact points written as an explicit rotation
/// of the vehicle-frame rectangle, kept separate from the library's
/// direction-vector formulation.
struct TruthLayout {
  GroundPoint fb, rb, fwl, fwr, rwl, rwr;
};

inline TruthLayout layout_oracle(GroundPoint center, double heading, double l, double w,
                                 double fo, double ro) {
  const double c = std::cos(heading);
  const double s = std::sin(heading);
  auto place = [&](double ax, double ay) {
    return GroundPoint{center.x + ax * c - ay * s, center.y + ax * s + ay * c};
  };
  TruthLayout out;
  out.fb = place(l / 2.0, 0.0);
  out.rb = place(-l / 2.0, 0.0);
  out.fwl = place(l / 2.0 - fo, w / 2.0);
  out.fwr = place(l / 2.0 - fo, -w / 2.0);
  out.rwl = place(-(l / 2.0 - ro), w / 2.0);
  out.rwr = place(-(l / 2.0 - ro), -w / 2.0);
  return out;
}

inline ContactPoint make_contact(ContactPointKind kind, GroundPoint physical,
                                 Channel channel = Channel::Front) {
  return ContactPoint{kind, PixelPoint{0.0, 0.0}, physical, channel};
}

}  // namespace svbev::test
