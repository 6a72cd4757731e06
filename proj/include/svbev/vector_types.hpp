#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "svbev/fisheye_camera.hpp"
#include "svbev/geometry.hpp"
#include "svbev/vehicle_catalog.hpp"

namespace svbev {

/// Typed ground contact points: front/rear wheel, front/rear bumper.
enum class ContactPointKind { FW, RW, FB, RB };

inline constexpr int kContactKindCount = 4;
inline constexpr std::array<ContactPointKind, kContactKindCount> kAllContactKinds = {
    ContactPointKind::FW, ContactPointKind::RW, ContactPointKind::FB, ContactPointKind::RB};

const char* contact_kind_name(ContactPointKind k);
inline int contact_kind_index(ContactPointKind k) { return static_cast<int>(k); }

/// A ground contact observation: where it sits in the source image and where
/// the IPM chain placed it on the ground plane (z = 0 by construction).
struct ContactPoint {
  ContactPointKind kind = ContactPointKind::FW;
  PixelPoint pixel;      // GP_pix
  GroundPoint physical;  // GP_phy
  Channel source_channel = Channel::Front;
};

/// 2D bounding box, top-left origin: (X, Y) corner, W to the right, L down.
struct BBox {
  double x = 0.0;
  double y = 0.0;
  double w = 0.0;
  double l = 0.0;
};

/// Stage-1 fusion merges on exact pixel equality of boxes.
inline bool operator==(const BBox& a, const BBox& b) {
  return a.x == b.x && a.y == b.y && a.w == b.w && a.l == b.l;
}
inline bool operator!=(const BBox& a, const BBox& b) { return !(a == b); }

struct Dimensions {
  double l = 0.0;
  double w = 0.0;
  double h = 0.0;
};

struct Overhangs {
  double fo = 0.0;
  double ro = 0.0;
};

/// Detection confidences carried through fusion so conflicting scalar fields
/// can be resolved by score.
struct VectorScores {
  std::optional<double> vehicle;
  std::optional<double> type;
  std::optional<double> heading;
};

/// The per-target record aggregating everything the branches produced:
/// id, type, dimensions, overhangs, angles and contact points.
struct MultidimensionalVector {
  std::optional<uint64_t> obj_id;
  Channel channel = Channel::Front;
  BBox bbox;
  std::optional<std::string> vehicle_type;
  std::optional<Dimensions> dims;
  std::optional<Overhangs> overhangs;
  std::optional<double> heading_regressed;  // radians, branch-3 output
  std::optional<double> heading_geometric;  // radians, filled by pose recovery
  std::optional<double> azimuth;            // radians, bearing from ego origin
  VectorScores scores;

  /// Set-keyed storage: at most one contact point per kind by construction.
  std::array<std::optional<ContactPoint>, kContactKindCount> contact_points;

  void set_contact(const ContactPoint& p) {
    contact_points[static_cast<size_t>(contact_kind_index(p.kind))] = p;
  }
  const std::optional<ContactPoint>& contact(ContactPointKind k) const {
    return contact_points[static_cast<size_t>(contact_kind_index(k))];
  }
  int contact_count() const {
    int n = 0;
    for (const auto& c : contact_points) n += c.has_value() ? 1 : 0;
    return n;
  }
};

/// Structural invariant check; each entry names one failed invariant.
/// Violations are data, not errors.
std::vector<std::string> validate_vector(const MultidimensionalVector& v);

/// Anchor contact point for the azimuth, priority RW > FW > RB > FB.
std::optional<GroundPoint> azimuth_anchor(const MultidimensionalVector& v);

/// Recomputes the azimuth field from the current contact points.
std::optional<double> compute_azimuth(const MultidimensionalVector& v);

/// Recovered BEV pose: center P, heading phi, and the four corners in
/// Left-Front, Left-Rear, Right-Front, Right-Rear order (vehicle's own frame).
struct BevBox {
  uint64_t obj_id = 0;
  std::string type_name;
  GroundPoint center;    // P
  double heading = 0.0;  // phi, (-pi, pi]
  GroundPoint a;         // left-front
  GroundPoint b;         // left-rear
  GroundPoint c;         // right-front
  GroundPoint d;         // right-rear
};

/// Rectangle invariants: side lengths l and w, corner midpoint at center,
/// Table-order corner labels. Tolerance 1e-9 m.
std::vector<std::string> bev_box_violations(const BevBox& box, double l, double w);

}  // namespace svbev
