#include "svbev/bev_generator.hpp"

#include <cmath>

namespace svbev {

namespace {

constexpr double kMinPointSeparation = 0.1;  // meters
constexpr double kSideEps = 1e-9;

VehicleTypeSpec spec_from_vector(const MultidimensionalVector& v) {
  VehicleTypeSpec spec;
  spec.type_name = v.vehicle_type.value_or("");
  if (v.dims) {
    spec.l = v.dims->l;
    spec.w = v.dims->w;
    spec.h = v.dims->h;
  }
  if (v.overhangs) {
    spec.fo = v.overhangs->fo;
    spec.ro = v.overhangs->ro;
  }
  return spec;
}

/// Fallback side resolution for case 2 when no regressed heading exists:
/// as seen from the origin, the visible-side rear wheel sits counterclockwise
/// of the rear bumper exactly when the left side faces us.
Result<VisibleSide> side_from_point_ordering(const GroundPoint& rw, const GroundPoint& rb) {
  const double delta = wrap_angle(azimuth_of(rw) - azimuth_of(rb));
  if (std::abs(delta) < kSideEps) return Err::DegenerateSide;
  return delta > 0.0 ? VisibleSide::Left : VisibleSide::Right;
}

}  // namespace

const char* side_name(VisibleSide s) {
  return s == VisibleSide::Left ? "left" : "right";
}

const char* pose_case_name(PoseCase c) {
  switch (c) {
    case PoseCase::TwoWheels: return "two_wheels";
    case PoseCase::WheelPlusBumper: return "wheel_plus_bumper";
    case PoseCase::BumperOnly: return "bumper_only";
  }
  return "invalid";
}

Result<VisibleSide> visible_side(double heading, double azimuth) {
  const double s = std::sin(heading - azimuth);
  if (std::abs(s) < kSideEps) return Err::DegenerateSide;
  return s > 0.0 ? VisibleSide::Left : VisibleSide::Right;
}

Result<double> heading_from_two_wheels(const GroundPoint& fw, const GroundPoint& rw) {
  if (distance(fw, rw) <= kMinPointSeparation) return Err::WheelsCoincident;
  return wrap_angle(std::atan2(fw.y - rw.y, fw.x - rw.x));
}

Result<PoseEstimate> pose_case1(const GroundPoint& fw, const GroundPoint& rw,
                                const VehicleTypeSpec& spec, VisibleSide side) {
  const Result<double> heading = heading_from_two_wheels(fw, rw);
  if (!heading.ok()) return heading.error();
  const double phi = heading.value();
  const Vec2 dir = heading_dir(phi);

  const GroundPoint corner_front = offset(fw, spec.fo, dir);   // A for a left view
  const GroundPoint corner_rear = offset(rw, -spec.ro, dir);   // B for a left view
  const GroundPoint mid{0.5 * (corner_front.x + corner_rear.x),
                        0.5 * (corner_front.y + corner_rear.y)};
  // Visible wheels on the left: center is a quarter turn clockwise of the
  // heading; mirrored for the right side.
  const double inward = side == VisibleSide::Left ? phi - kPi / 2.0 : phi + kPi / 2.0;
  PoseEstimate pose;
  pose.center = offset(mid, spec.w / 2.0, heading_dir(inward));
  pose.heading = phi;
  pose.case_used = PoseCase::TwoWheels;
  pose.side = side;
  return pose;
}

Result<PoseEstimate> pose_case2(const GroundPoint& rw, const GroundPoint& rb,
                                const VehicleTypeSpec& spec, VisibleSide side) {
  if (distance(rw, rb) <= kMinPointSeparation) return Err::PointsCoincident;
  const double gamma = std::atan2(rw.y - rb.y, rw.x - rb.x);
  const double offset_angle = std::atan2(spec.w / 2.0, spec.ro);
  const double phi =
      wrap_angle(side == VisibleSide::Left ? gamma - offset_angle : gamma + offset_angle);
  PoseEstimate pose;
  pose.center = offset(rb, spec.l / 2.0, heading_dir(phi));
  pose.heading = phi;
  pose.case_used = PoseCase::WheelPlusBumper;
  pose.side = side;
  return pose;
}

Result<PoseEstimate> pose_case3(const ContactPoint& bumper,
                                std::optional<double> heading_regressed,
                                const VehicleTypeSpec& spec) {
  if (!heading_regressed) return Err::MissingRegressedHeading;
  const double phi = wrap_angle(*heading_regressed);
  PoseEstimate pose;
  if (bumper.kind == ContactPointKind::RB) {
    pose.center = offset(bumper.physical, spec.l / 2.0, heading_dir(phi));
  } else {
    pose.center = offset(bumper.physical, -spec.l / 2.0, heading_dir(phi));
  }
  pose.heading = phi;
  pose.case_used = PoseCase::BumperOnly;
  return pose;
}

BevBox corners_from_pose(const PoseEstimate& pose, const VehicleTypeSpec& spec,
                         uint64_t obj_id, const std::string& type_name) {
  const Vec2 dir = heading_dir(pose.heading);
  const Vec2 left = left_dir(pose.heading);
  const double hl = spec.l / 2.0;
  const double hw = spec.w / 2.0;
  BevBox box;
  box.obj_id = obj_id;
  box.type_name = type_name;
  box.center = pose.center;
  box.heading = wrap_angle(pose.heading);
  box.a = {pose.center.x + hl * dir.x + hw * left.x, pose.center.y + hl * dir.y + hw * left.y};
  box.b = {pose.center.x - hl * dir.x + hw * left.x, pose.center.y - hl * dir.y + hw * left.y};
  box.c = {pose.center.x + hl * dir.x - hw * left.x, pose.center.y + hl * dir.y - hw * left.y};
  box.d = {pose.center.x - hl * dir.x - hw * left.x, pose.center.y - hl * dir.y - hw * left.y};
  return box;
}

Result<PoseEstimate> estimate_pose(const MultidimensionalVector& v) {
  if (!v.dims || !v.overhangs) return Err::InsufficientGeometry;
  const VehicleTypeSpec spec = spec_from_vector(v);

  const auto& fw = v.contact(ContactPointKind::FW);
  const auto& rw = v.contact(ContactPointKind::RW);
  const auto& fb = v.contact(ContactPointKind::FB);
  const auto& rb = v.contact(ContactPointKind::RB);

  Err last = Err::InsufficientGeometry;

  // Case 1: heading comes side-independently from the wheels, then the side
  // test places the center.
  if (fw && rw && v.azimuth) {
    const Result<double> heading = heading_from_two_wheels(fw->physical, rw->physical);
    if (heading.ok()) {
      const Result<VisibleSide> side = visible_side(heading.value(), *v.azimuth);
      if (side.ok()) {
        return pose_case1(fw->physical, rw->physical, spec, side.value());
      }
      last = side.error();
    } else {
      last = heading.error();
    }
  }

  // Case 2 needs the side before the heading exists, so it comes from the
  // regressed heading when present, else from the wheel/bumper bearing order.
  if (rw && rb && v.azimuth) {
    Result<VisibleSide> side = v.heading_regressed
                                   ? visible_side(*v.heading_regressed, *v.azimuth)
                                   : side_from_point_ordering(rw->physical, rb->physical);
    if (side.ok()) {
      const Result<PoseEstimate> pose = pose_case2(rw->physical, rb->physical, spec, side.value());
      if (pose.ok()) return pose;
      last = pose.error();
    } else {
      last = side.error();
    }
  }

  // Case 3: prefer the rear bumper, the paper's base arrangement.
  if (rb || fb) {
    const Result<PoseEstimate> pose = pose_case3(rb ? *rb : *fb, v.heading_regressed, spec);
    if (pose.ok()) return pose;
    last = pose.error();
  }
  return last;
}

Result<BevBox> generate_bev_vector(const MultidimensionalVector& v) {
  const Result<PoseEstimate> pose = estimate_pose(v);
  if (!pose.ok()) return pose.error();
  const VehicleTypeSpec spec = spec_from_vector(v);
  return corners_from_pose(pose.value(), spec, v.obj_id.value_or(0),
                           v.vehicle_type.value_or(""));
}

}  // namespace svbev
