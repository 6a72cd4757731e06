#include "svbev/vector_types.hpp"

#include <cmath>

namespace svbev {

const char* contact_kind_name(ContactPointKind k) {
  switch (k) {
    case ContactPointKind::FW: return "FW";
    case ContactPointKind::RW: return "RW";
    case ContactPointKind::FB: return "FB";
    case ContactPointKind::RB: return "RB";
  }
  return "invalid";
}

namespace {

bool angle_in_range(double a) { return a > -kPi && a <= kPi; }

constexpr std::array<ContactPointKind, 4> kAzimuthPriority = {
    ContactPointKind::RW, ContactPointKind::FW, ContactPointKind::RB, ContactPointKind::FB};

}  // namespace

std::vector<std::string> validate_vector(const MultidimensionalVector& v) {
  std::vector<std::string> out;
  if (v.vehicle_type.has_value()) {
    if (!v.dims.has_value()) out.push_back("dims missing for typed vehicle");
    if (!v.overhangs.has_value()) out.push_back("overhangs missing for typed vehicle");
  }
  if (v.heading_regressed && !angle_in_range(*v.heading_regressed)) {
    out.push_back("heading_regressed outside (-pi, pi]");
  }
  if (v.heading_geometric && !angle_in_range(*v.heading_geometric)) {
    out.push_back("heading_geometric outside (-pi, pi]");
  }
  if (v.azimuth && !angle_in_range(*v.azimuth)) {
    out.push_back("azimuth outside (-pi, pi]");
  }
  if (!(v.bbox.w > 0.0) || !(v.bbox.l > 0.0)) {
    out.push_back("bbox must have positive extent");
  }
  for (const auto& c : v.contact_points) {
    if (c && !std::isfinite(c->physical.x + c->physical.y)) {
      out.push_back("contact point physical coordinates not finite");
    }
  }
  return out;
}

std::optional<GroundPoint> azimuth_anchor(const MultidimensionalVector& v) {
  for (ContactPointKind k : kAzimuthPriority) {
    if (const auto& c = v.contact(k)) return c->physical;
  }
  return std::nullopt;
}

std::optional<double> compute_azimuth(const MultidimensionalVector& v) {
  const auto anchor = azimuth_anchor(v);
  if (!anchor) return std::nullopt;
  return azimuth_of(*anchor);
}

std::vector<std::string> bev_box_violations(const BevBox& box, double l, double w) {
  std::vector<std::string> out;
  constexpr double kTol = 1e-9;
  auto near = [](double a, double b) { return std::abs(a - b) <= kTol; };

  // Side lengths per the corner labeling.
  if (!near(distance(box.a, box.b), l)) out.push_back("left side length != l");
  if (!near(distance(box.c, box.d), l)) out.push_back("right side length != l");
  if (!near(distance(box.a, box.c), w)) out.push_back("front side length != w");
  if (!near(distance(box.b, box.d), w)) out.push_back("rear side length != w");
  // Diagonals of a rectangle are equal and bisect each other at the center.
  if (!near(distance(box.a, box.d), distance(box.b, box.c))) {
    out.push_back("diagonals differ (not a rectangle)");
  }
  const GroundPoint mid{0.25 * (box.a.x + box.b.x + box.c.x + box.d.x),
                        0.25 * (box.a.y + box.b.y + box.c.y + box.d.y)};
  if (!near(mid.x, box.center.x) || !near(mid.y, box.center.y)) {
    out.push_back("corner midpoint != center");
  }
  // Label order: A must sit forward of B and left of C in the vehicle frame.
  const Vec2 dir = heading_dir(box.heading);
  const Vec2 left = left_dir(box.heading);
  const Vec2 ab{box.a.x - box.b.x, box.a.y - box.b.y};
  const Vec2 ac{box.a.x - box.c.x, box.a.y - box.c.y};
  if (dot(ab, dir) <= 0.0) out.push_back("corner A not forward of B");
  if (dot(ac, left) <= 0.0) out.push_back("corner A not left of C");
  if (!angle_in_range(box.heading)) out.push_back("heading outside (-pi, pi]");
  return out;
}

}  // namespace svbev
