#pragma once

#include <optional>

#include "svbev/result.hpp"
#include "svbev/vector_types.hpp"

namespace svbev {

/// Which lateral side of the target faces the observer.
enum class VisibleSide { Left, Right };

const char* side_name(VisibleSide s);

enum class PoseCase { TwoWheels, WheelPlusBumper, BumperOnly };

const char* pose_case_name(PoseCase c);

struct PoseEstimate {
  GroundPoint center;    // P
  double heading = 0.0;  // phi, (-pi, pi]
  PoseCase case_used = PoseCase::TwoWheels;
  std::optional<VisibleSide> side;
};

/// Side test: sin(heading - azimuth) > 0 means the left side is visible,
/// < 0 the right side. Within 1e-9 of zero the target is aligned with its
/// own axis as seen from the origin and the side is undecidable.
Result<VisibleSide> visible_side(double heading, double azimuth);

/// Heading from the slope of line(RW, FW), full-quadrant form. Guarded by a
/// 0.1 m minimum wheel separation.
Result<double> heading_from_two_wheels(const GroundPoint& fw, const GroundPoint& rw);

/// Case 1: both same-side wheels visible. Corner A extends the front wheel by
/// the front overhang, corner B extends the rear wheel backwards by the rear
/// overhang, and the center sits half a width inward of their midpoint
/// (toward the right of the heading for a Left view, and vice versa).
Result<PoseEstimate> pose_case1(const GroundPoint& fw, const GroundPoint& rw,
                                const VehicleTypeSpec& spec, VisibleSide side);

/// Case 2: rear wheel plus rear bumper. The bearing of line(RB, RW) minus
/// (plus, for Right) the offset angle arctan((w/2)/ro) gives the heading;
/// the center sits half a length ahead of the rear bumper.
Result<PoseEstimate> pose_case2(const GroundPoint& rw, const GroundPoint& rb,
                                const VehicleTypeSpec& spec, VisibleSide side);

/// Case 3: a single bumper plus the regressed heading. Rear bumper: center is
/// half a length ahead; front bumper: half a length behind.
Result<PoseEstimate> pose_case3(const ContactPoint& bumper,
                                std::optional<double> heading_regressed,
                                const VehicleTypeSpec& spec);

/// Corners at P +- (l/2) along the heading +- (w/2) to the left, labeled
/// A (left-front), B (left-rear), C (right-front), D (right-rear).
BevBox corners_from_pose(const PoseEstimate& pose, const VehicleTypeSpec& spec,
                         uint64_t obj_id, const std::string& type_name);

/// Case dispatch, most geometric information first: two wheels, then wheel
/// plus bumper, then bumper plus regressed heading. A case that fails on a
/// degeneracy falls through to the next.
Result<PoseEstimate> estimate_pose(const MultidimensionalVector& v);

/// estimate_pose followed by corners_from_pose.
Result<BevBox> generate_bev_vector(const MultidimensionalVector& v);

}  // namespace svbev
