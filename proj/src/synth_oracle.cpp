#include "svbev/synth_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "svbev/branch_adapters.hpp"

namespace svbev {

namespace {

// Nominal synthetic part-box sizes, pixels. Only the bottom-edge midpoint
// carries information; the sizes just have to look like boxes.
constexpr double kWheelBoxW = 40.0;
constexpr double kWheelBoxL = 40.0;
constexpr double kBumperBoxW = 120.0;
constexpr double kBumperBoxL = 30.0;
constexpr double kVehicleScore = 0.95;
constexpr double kPartScore = 0.9;
constexpr double kLabelScore = 0.9;

// Ego footprint for placement rejection (covers body and mounts).
constexpr double kEgoCenterX = 1.4;
constexpr double kEgoHalfL = 2.4;
constexpr double kEgoHalfW = 0.95;

struct OrientedRect {
  GroundPoint center;
  double heading = 0.0;
  double half_l = 0.0;
  double half_w = 0.0;
};

std::array<GroundPoint, 4> rect_corners(const OrientedRect& r) {
  const Vec2 dir = heading_dir(r.heading);
  const Vec2 left = left_dir(r.heading);
  auto corner = [&](double sl, double sw) {
    return GroundPoint{r.center.x + sl * r.half_l * dir.x + sw * r.half_w * left.x,
                       r.center.y + sl * r.half_l * dir.y + sw * r.half_w * left.y};
  };
  return {corner(1, 1), corner(1, -1), corner(-1, 1), corner(-1, -1)};
}

/// Separating-axis overlap test for two oriented rectangles.
bool rects_overlap(const OrientedRect& a, const OrientedRect& b) {
  const auto ca = rect_corners(a);
  const auto cb = rect_corners(b);
  const std::array<Vec2, 4> axes = {heading_dir(a.heading), left_dir(a.heading),
                                    heading_dir(b.heading), left_dir(b.heading)};
  for (const Vec2& axis : axes) {
    double a_lo = std::numeric_limits<double>::infinity(), a_hi = -a_lo;
    double b_lo = a_lo, b_hi = a_hi;
    for (const GroundPoint& p : ca) {
      const double v = p.x * axis.x + p.y * axis.y;
      a_lo = std::min(a_lo, v);
      a_hi = std::max(a_hi, v);
    }
    for (const GroundPoint& p : cb) {
      const double v = p.x * axis.x + p.y * axis.y;
      b_lo = std::min(b_lo, v);
      b_hi = std::max(b_hi, v);
    }
    if (a_hi < b_lo || b_hi < a_lo) return false;
  }
  return true;
}

OrientedRect footprint(const GroundTruthVehicle& v, const VehicleTypeSpec& spec,
                       double margin) {
  return {v.position, v.heading, spec.l / 2.0 + margin, spec.w / 2.0 + margin};
}

/// True ground plane tilted about the ego y-axis by arctan(slope_gradient);
/// the flat layout is rotated onto it so z = gradient * x holds exactly.
Vec3 tilt_onto_slope(GroundPoint p, double slope_gradient) {
  if (slope_gradient == 0.0) return {p.x, p.y, 0.0};
  const double inv_hyp = 1.0 / std::sqrt(1.0 + slope_gradient * slope_gradient);
  const double cos_a = inv_hyp;
  const double sin_a = slope_gradient * inv_hyp;
  return {p.x * cos_a, p.y, p.x * sin_a};
}

BBox part_box(PixelPoint bottom_mid, double w, double l, bool quantize) {
  BBox b{bottom_mid.u - w / 2.0, bottom_mid.v - l, w, l};
  if (quantize) {
    b.x = std::round(b.x);
    b.y = std::round(b.y);
  }
  return b;
}

/// Side of the vehicle facing an observer at `viewer`: the Eq-style sign test
/// on sin(heading - bearing(viewer -> target)).
double side_sign(const GroundTruthVehicle& v, GroundPoint viewer) {
  const double theta = std::atan2(v.position.y - viewer.y, v.position.x - viewer.x);
  return std::sin(v.heading - theta);
}

struct CandidatePoint {
  ContactPointKind kind;
  GroundPoint flat;
};

/// Contact points a camera can face: the facing side's wheels plus the bumper
/// of the end the camera lies beyond.
std::vector<CandidatePoint> facing_candidates(const GroundTruthVehicle& v,
                                              const VehicleContacts& contacts,
                                              const VehicleTypeSpec& spec,
                                              GroundPoint camera_xy) {
  std::vector<CandidatePoint> out;
  const double s = side_sign(v, camera_xy);
  if (s > 0.0) {
    out.push_back({ContactPointKind::FW, contacts.fw_left});
    out.push_back({ContactPointKind::RW, contacts.rw_left});
  } else if (s < 0.0) {
    out.push_back({ContactPointKind::FW, contacts.fw_right});
    out.push_back({ContactPointKind::RW, contacts.rw_right});
  }
  const Vec2 dir = heading_dir(v.heading);
  const double along = (camera_xy.x - v.position.x) * dir.x + (camera_xy.y - v.position.y) * dir.y;
  if (along > spec.l / 2.0) {
    out.push_back({ContactPointKind::FB, contacts.fb});
  } else if (along < -spec.l / 2.0) {
    out.push_back({ContactPointKind::RB, contacts.rb});
  }
  return out;
}

}  // namespace

std::vector<std::string> noise_spec_violations(const NoiseSpec& noise) {
  std::vector<std::string> out;
  if (noise.pixel_sigma < 0.0) out.push_back("pixel_sigma must be >= 0");
  if (noise.drop_probability < 0.0 || noise.drop_probability > 1.0) {
    out.push_back("drop_probability must lie in [0, 1]");
  }
  return out;
}

VehicleContacts true_contact_points(const GroundTruthVehicle& v, const VehicleTypeSpec& spec) {
  const Vec2 dir = heading_dir(v.heading);
  const Vec2 left = left_dir(v.heading);
  const double front_off = spec.l / 2.0 - spec.fo;  // front axle ahead of center
  const double rear_off = spec.l / 2.0 - spec.ro;   // rear axle behind center
  const double hw = spec.w / 2.0;

  auto at = [&](double along, double lateral) {
    return GroundPoint{v.position.x + along * dir.x + lateral * left.x,
                       v.position.y + along * dir.y + lateral * left.y};
  };
  VehicleContacts c;
  c.fb = at(spec.l / 2.0, 0.0);
  c.rb = at(-spec.l / 2.0, 0.0);
  c.fw_left = at(front_off, hw);
  c.fw_right = at(front_off, -hw);
  c.rw_left = at(-rear_off, hw);
  c.rw_right = at(-rear_off, -hw);
  return c;
}

bool VehicleVisibility::visible() const {
  for (const auto& parts : parts_per_channel) {
    if (!parts.empty()) return true;
  }
  return false;
}

std::vector<Channel> VehicleVisibility::observing_channels() const {
  std::vector<Channel> out;
  for (Channel c : kAllChannels) {
    if (!parts_per_channel[static_cast<size_t>(channel_index(c))].empty()) out.push_back(c);
  }
  return out;
}

bool VehicleVisibility::reconstructible() const {
  bool fw = false, rw = false, fb = false, rb = false;
  for (const auto& parts : parts_per_channel) {
    for (ContactPointKind k : parts) {
      fw |= k == ContactPointKind::FW;
      rw |= k == ContactPointKind::RW;
      fb |= k == ContactPointKind::FB;
      rb |= k == ContactPointKind::RB;
    }
  }
  return (fw && rw) || rb || fb;
}

RenderedScene render_detections(const std::vector<GroundTruthVehicle>& scene,
                                const CameraRig& rig, const VehicleCatalog& catalog,
                                const NoiseSpec& noise, uint64_t frame_id) {
  RenderedScene out;
  out.visibility.resize(scene.size());
  for (size_t i = 0; i < scene.size(); ++i) out.visibility[i].vehicle_id = scene[i].id;

  Rng rng(noise.seed, frame_id);

  for (Channel channel : kAllChannels) {
    const size_t ch = static_cast<size_t>(channel_index(channel));
    const FisheyeCamera& camera = rig.camera(channel);
    DetectionRecord& record = out.records[ch];
    record.channel = channel;
    record.frame_id = frame_id;

    for (size_t vi = 0; vi < scene.size(); ++vi) {
      const GroundTruthVehicle& v = scene[vi];
      const Result<VehicleTypeSpec> spec = catalog.lookup(v.type_name);
      if (!spec.ok()) continue;
      const VehicleContacts contacts = true_contact_points(v, spec.value());
      const GroundPoint camera_xy{camera.translation.x, camera.translation.y};

      std::vector<std::pair<ContactPointKind, BBox>> parts;
      for (const CandidatePoint& cand :
           facing_candidates(v, contacts, spec.value(), camera_xy)) {
        const Vec3 world = tilt_onto_slope(cand.flat, noise.slope_gradient);
        const Result<PixelPoint> projected = camera.project_point(world);
        if (!projected.ok()) continue;
        const bool is_wheel =
            cand.kind == ContactPointKind::FW || cand.kind == ContactPointKind::RW;
        // Drops stand in for occlusion and apply to wheels; bumpers stay so
        // the fallback cases remain reachable.
        if (is_wheel && rng.uniform01() < noise.drop_probability) continue;
        const double du = rng.normal(noise.pixel_sigma);
        const double dv = rng.normal(noise.pixel_sigma);
        const PixelPoint px{projected.value().u + du, projected.value().v + dv};
        parts.emplace_back(cand.kind,
                           part_box(px, is_wheel ? kWheelBoxW : kBumperBoxW,
                                    is_wheel ? kWheelBoxL : kBumperBoxL, noise.quantize));
      }
      if (parts.empty()) continue;

      BBox hull = parts.front().second;
      for (const auto& [kind, box] : parts) {
        const double x1 = std::max(hull.x + hull.w, box.x + box.w);
        const double y1 = std::max(hull.y + hull.l, box.y + box.l);
        hull.x = std::min(hull.x, box.x);
        hull.y = std::min(hull.y, box.y);
        hull.w = x1 - hull.x;
        hull.l = y1 - hull.y;
      }

      record.boxes.push_back({PartClass::Vehicle, hull, kVehicleScore});
      out.box_owners[ch].push_back(v.id);
      for (const auto& [kind, box] : parts) {
        PartClass cls = PartClass::FrontWheel;
        switch (kind) {
          case ContactPointKind::FW: cls = PartClass::FrontWheel; break;
          case ContactPointKind::RW: cls = PartClass::RearWheel; break;
          case ContactPointKind::FB: cls = PartClass::FrontBumper; break;
          case ContactPointKind::RB: cls = PartClass::RearBumper; break;
        }
        record.boxes.push_back({cls, box, kPartScore});
        out.box_owners[ch].push_back(v.id);
        out.visibility[vi].parts_per_channel[ch].push_back(kind);
      }
      record.type_labels.push_back({hull, v.type_name, kLabelScore});
      record.heading_estimates.push_back({hull, wrap_angle(v.heading), kLabelScore});
    }
  }
  return out;
}

namespace {

/// Scene-level admissibility used by the sampler. Rejects configurations the
/// positioning formulas cannot disambiguate: observers disagreeing about the
/// visible side, side tests inside the margin, part boxes that associate to a
/// foreign vehicle, and vehicles observed only as unusable fragments.
bool scene_admissible(const std::vector<GroundTruthVehicle>& scene, const CameraRig& rig,
                      const VehicleCatalog& catalog, const SceneSamplerConfig& config) {
  const NoiseSpec clean;  // zero noise: admissibility is a property of the layout
  const RenderedScene rendered = render_detections(scene, rig, catalog, clean, 0);

  for (size_t vi = 0; vi < scene.size(); ++vi) {
    const GroundTruthVehicle& v = scene[vi];
    const VehicleVisibility& vis = rendered.visibility[vi];
    if (!vis.visible()) continue;  // out of coverage: allowed, flagged later
    if (!vis.reconstructible()) return false;

    // Side consistency: all wheel observers must agree, with margin, and the
    // origin-anchored side test must reproduce their answer.
    int agreed_sign = 0;
    for (Channel channel : kAllChannels) {
      const size_t ch = static_cast<size_t>(channel_index(channel));
      const auto& parts = vis.parts_per_channel[ch];
      const bool has_wheel =
          std::any_of(parts.begin(), parts.end(), [](ContactPointKind k) {
            return k == ContactPointKind::FW || k == ContactPointKind::RW;
          });
      if (!has_wheel) continue;
      const FisheyeCamera& camera = rig.camera(channel);
      const double s = side_sign(v, {camera.translation.x, camera.translation.y});
      if (std::abs(s) < config.side_margin) return false;
      const int sign = s > 0.0 ? 1 : -1;
      if (agreed_sign == 0) {
        agreed_sign = sign;
      } else if (sign != agreed_sign) {
        return false;
      }
    }
    const Result<VehicleTypeSpec> spec = catalog.lookup(v.type_name);
    const VehicleContacts contacts = true_contact_points(v, spec.value());
    if (agreed_sign != 0) {
      const GroundPoint anchor =
          agreed_sign > 0 ? contacts.rw_left : contacts.rw_right;
      const double s_origin = std::sin(v.heading - azimuth_of(anchor));
      if (std::abs(s_origin) < config.side_margin) return false;
      if ((s_origin > 0.0 ? 1 : -1) != agreed_sign) return false;
    }

    // Grouping connectivity: the per-channel observations of one vehicle must
    // fall into a single cluster under the proximity gate, or the merge stage
    // would emit two targets for it. With zero noise, same-kind points
    // coincide, so channels connect exactly when they share a kind or carry
    // cross-kind points closer than the gate.
    auto point_of = [&](ContactPointKind k, int sign) {
      switch (k) {
        case ContactPointKind::FB: return contacts.fb;
        case ContactPointKind::RB: return contacts.rb;
        case ContactPointKind::FW: return sign > 0 ? contacts.fw_left : contacts.fw_right;
        default: return sign > 0 ? contacts.rw_left : contacts.rw_right;
      }
    };
    std::vector<size_t> observers;
    for (size_t ch = 0; ch < kChannelCount; ++ch) {
      if (!vis.parts_per_channel[ch].empty()) observers.push_back(ch);
    }
    std::vector<size_t> cluster(observers.size());
    for (size_t i = 0; i < observers.size(); ++i) cluster[i] = i;
    auto find_root = [&](size_t i) {
      while (cluster[i] != i) i = cluster[i];
      return i;
    };
    for (size_t i = 0; i < observers.size(); ++i) {
      for (size_t j = i + 1; j < observers.size(); ++j) {
        double best = std::numeric_limits<double>::infinity();
        for (ContactPointKind ka : vis.parts_per_channel[observers[i]]) {
          for (ContactPointKind kb : vis.parts_per_channel[observers[j]]) {
            best = std::min(best, distance(point_of(ka, agreed_sign),
                                           point_of(kb, agreed_sign)));
          }
        }
        if (best < config.proximity_gate_m) cluster[find_root(i)] = find_root(j);
      }
    }
    for (size_t i = 1; i < observers.size(); ++i) {
      if (find_root(i) != find_root(0)) return false;
    }
  }

  // Association correctness: every part box must resolve to its own vehicle.
  for (Channel channel : kAllChannels) {
    const size_t ch = static_cast<size_t>(channel_index(channel));
    const DetectionRecord& record = rendered.records[ch];
    const auto& owners = rendered.box_owners[ch];
    const PartAssignment assignment = associate_parts(record, 0.0);
    size_t assigned = 0;
    for (size_t vi = 0; vi < assignment.vehicle_box_indices.size(); ++vi) {
      const uint64_t vehicle_owner = owners[assignment.vehicle_box_indices[vi]];
      for (const auto& slot : assignment.parts[vi]) {
        if (!slot) continue;
        ++assigned;
        if (owners[*slot] != vehicle_owner) return false;
      }
    }
    size_t part_count = 0;
    for (const DetectionBox& b : record.boxes) {
      if (b.cls != PartClass::Vehicle) ++part_count;
    }
    if (assigned != part_count) return false;  // some part fell outside its hull
  }
  return true;
}

}  // namespace

std::vector<GroundTruthVehicle> sample_scene(int target_count, const CameraRig& rig,
                                             const VehicleCatalog& catalog, Rng& rng,
                                             const SceneSamplerConfig& config) {
  const std::vector<std::string> type_names =
      config.allowed_types.empty() ? catalog.names() : config.allowed_types;
  const OrientedRect ego{{kEgoCenterX, 0.0}, 0.0, kEgoHalfL, kEgoHalfW};

  std::vector<GroundTruthVehicle> scene;
  std::vector<OrientedRect> accepted_rects;

  for (int k = 0; k < target_count; ++k) {
    for (int attempt = 0; attempt < config.attempts_per_vehicle; ++attempt) {
      GroundTruthVehicle cand;
      cand.id = static_cast<uint64_t>(scene.size()) + 1;
      if (config.x_range && config.y_abs_range) {
        cand.position.x = rng.uniform(config.x_range->first, config.x_range->second);
        const double y = rng.uniform(config.y_abs_range->first, config.y_abs_range->second);
        cand.position.y = rng.uniform01() < 0.5 ? y : -y;
      } else {
        // Area-uniform over the annulus of center distances.
        const double r = std::sqrt(rng.uniform(config.r_min * config.r_min,
                                               config.r_max * config.r_max));
        const double bearing = rng.uniform(-kPi, kPi);
        cand.position = {r * std::cos(bearing), r * std::sin(bearing)};
      }
      cand.heading = wrap_angle(rng.uniform(-kPi, kPi));
      cand.type_name = type_names[static_cast<size_t>(
          rng.uniform_int(0, static_cast<int>(type_names.size()) - 1))];

      const Result<VehicleTypeSpec> spec = catalog.lookup(cand.type_name);
      const OrientedRect rect = footprint(cand, spec.value(), config.footprint_margin);
      if (rects_overlap(rect, ego)) continue;
      bool clear = true;
      for (const OrientedRect& other : accepted_rects) {
        if (rects_overlap(rect, other)) {
          clear = false;
          break;
        }
      }
      if (!clear) continue;

      scene.push_back(cand);
      if (scene_admissible(scene, rig, catalog, config)) {
        accepted_rects.push_back(rect);
        break;
      }
      scene.pop_back();
    }
  }
  return scene;
}

size_t ErrorReport::x_qualified_count() const {
  return static_cast<size_t>(
      std::count_if(matched.begin(), matched.end(),
                    [](const TargetError& t) { return t.x_qualified; }));
}

std::array<size_t, 3> ErrorReport::y_interval_counts() const {
  std::array<size_t, 3> out{};
  for (const TargetError& t : matched) ++out[static_cast<size_t>(t.interval)];
  return out;
}

std::array<size_t, 3> ErrorReport::y_interval_qualified() const {
  std::array<size_t, 3> out{};
  for (const TargetError& t : matched) {
    if (t.y_qualified) ++out[static_cast<size_t>(t.interval)];
  }
  return out;
}

double ErrorReport::x_qualification_rate() const {
  if (matched.empty()) return 1.0;
  return static_cast<double>(x_qualified_count()) / static_cast<double>(matched.size());
}

std::array<double, 3> ErrorReport::y_qualification_rates() const {
  const auto counts = y_interval_counts();
  const auto qualified = y_interval_qualified();
  std::array<double, 3> out{};
  for (size_t i = 0; i < 3; ++i) {
    out[i] = counts[i] == 0 ? 1.0
                            : static_cast<double>(qualified[i]) / static_cast<double>(counts[i]);
  }
  return out;
}

double truth_distance(const GroundTruthVehicle& v, const VehicleCatalog& catalog) {
  const Result<VehicleTypeSpec> spec = catalog.lookup(v.type_name);
  if (!spec.ok()) return std::hypot(v.position.x, v.position.y);
  const VehicleContacts c = true_contact_points(v, spec.value());
  double best = std::numeric_limits<double>::infinity();
  for (const GroundPoint& p :
       {c.fb, c.rb, c.fw_left, c.fw_right, c.rw_left, c.rw_right}) {
    best = std::min(best, std::hypot(p.x, p.y));
  }
  return best;
}

ErrorReport evaluate(const std::vector<BevBox>& estimates,
                     const std::vector<GroundTruthVehicle>& truth,
                     const VehicleCatalog& catalog, const EvalThresholds& thresholds) {
  ErrorReport report;
  report.thresholds = thresholds;

  struct Pair {
    double dist;
    size_t est, tru;
  };
  std::vector<Pair> pairs;
  for (size_t e = 0; e < estimates.size(); ++e) {
    for (size_t t = 0; t < truth.size(); ++t) {
      const double d = distance(estimates[e].center, truth[t].position);
      if (d <= thresholds.match_gate_m) pairs.push_back({d, e, t});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    if (a.est != b.est) return a.est < b.est;
    return a.tru < b.tru;
  });

  std::vector<bool> est_used(estimates.size(), false);
  std::vector<bool> tru_used(truth.size(), false);
  for (const Pair& p : pairs) {
    if (est_used[p.est] || tru_used[p.tru]) continue;
    est_used[p.est] = true;
    tru_used[p.tru] = true;

    const BevBox& est = estimates[p.est];
    const GroundTruthVehicle& tru = truth[p.tru];
    TargetError te;
    te.truth_id = tru.id;
    te.estimate_id = est.obj_id;
    te.distance_m = truth_distance(tru, catalog);
    te.x_error_m = est.center.x - tru.position.x;
    te.y_error_m = est.center.y - tru.position.y;
    te.heading_error_rad = wrap_angle(est.heading - tru.heading);
    te.interval = te.distance_m < thresholds.interval_bounds_m[0] ? 0
                  : te.distance_m < thresholds.interval_bounds_m[1] ? 1
                                                                    : 2;
    te.x_qualified = std::abs(te.x_error_m) <= thresholds.x_gate_m;
    te.y_qualified =
        std::abs(te.y_error_m) <= thresholds.y_gates_m[static_cast<size_t>(te.interval)];
    report.matched.push_back(te);
  }
  for (size_t t = 0; t < truth.size(); ++t) {
    if (!tru_used[t]) report.missed_truth_ids.push_back(truth[t].id);
  }
  for (size_t e = 0; e < estimates.size(); ++e) {
    if (!est_used[e]) report.false_positive_ids.push_back(estimates[e].obj_id);
  }
  return report;
}

}  // namespace svbev
