#include "svbev/branch_adapters.hpp"

#include <algorithm>
#include <cmath>

#include "svbev/reid_fusion.hpp"

namespace svbev {

namespace {

double intersection_area(const BBox& a, const BBox& b) {
  const double x0 = std::max(a.x, b.x);
  const double y0 = std::max(a.y, b.y);
  const double x1 = std::min(a.x + a.w, b.x + b.w);
  const double y1 = std::min(a.y + a.l, b.y + b.l);
  if (x1 <= x0 || y1 <= y0) return 0.0;
  return (x1 - x0) * (y1 - y0);
}

bool contains_point(const BBox& b, double px, double py) {
  return px >= b.x && px <= b.x + b.w && py >= b.y && py <= b.y + b.l;
}

void note(AdapterDiagnostics* diag, std::string msg) {
  if (diag) diag->notes.push_back(std::move(msg));
}

}  // namespace

PartAssignment associate_parts(const DetectionRecord& record, double score_threshold,
                               AdapterDiagnostics* diag) {
  PartAssignment out;
  for (size_t i = 0; i < record.boxes.size(); ++i) {
    const DetectionBox& b = record.boxes[i];
    if (b.cls == PartClass::Vehicle && b.score >= score_threshold) {
      out.vehicle_box_indices.push_back(i);
    }
  }
  out.parts.resize(out.vehicle_box_indices.size());

  for (size_t pi = 0; pi < record.boxes.size(); ++pi) {
    const DetectionBox& part = record.boxes[pi];
    const auto kind = contact_kind_of(part.cls);
    if (!kind || part.score < score_threshold) continue;

    const double cx = part.bbox.x + part.bbox.w / 2.0;
    const double cy = part.bbox.y + part.bbox.l / 2.0;
    const double part_area = part.bbox.w * part.bbox.l;

    // Owner: the containing vehicle box with the largest overlap ratio;
    // ties by higher vehicle score, then lower vehicle bbox X.
    std::optional<size_t> best;
    double best_ratio = -1.0;
    for (size_t vi = 0; vi < out.vehicle_box_indices.size(); ++vi) {
      const DetectionBox& veh = record.boxes[out.vehicle_box_indices[vi]];
      if (!contains_point(veh.bbox, cx, cy)) continue;
      const double ratio = intersection_area(part.bbox, veh.bbox) / part_area;
      if (!best) {
        best = vi;
        best_ratio = ratio;
        continue;
      }
      const DetectionBox& cur = record.boxes[out.vehicle_box_indices[*best]];
      if (ratio > best_ratio ||
          (ratio == best_ratio && (veh.score > cur.score ||
                                   (veh.score == cur.score && veh.bbox.x < cur.bbox.x)))) {
        best = vi;
        best_ratio = ratio;
      }
    }
    if (!best) {
      if (diag) ++diag->dropped_part_boxes;
      note(diag, std::string(part_class_name(part.cls)) + " box outside every vehicle box, dropped");
      continue;
    }

    auto& slot = out.parts[*best][static_cast<size_t>(contact_kind_index(*kind))];
    if (!slot) {
      slot = pi;
      continue;
    }
    // One box per kind per vehicle: keep the higher score (then lower X, lower Y).
    const DetectionBox& held = record.boxes[*slot];
    if (part.score > held.score ||
        (part.score == held.score &&
         (part.bbox.x < held.bbox.x ||
          (part.bbox.x == held.bbox.x && part.bbox.y < held.bbox.y)))) {
      slot = pi;
    }
  }
  return out;
}

std::vector<MultidimensionalVector> make_contact_vectors(const DetectionRecord& record,
                                                         const FisheyeCamera& camera,
                                                         const AdapterConfig& config,
                                                         AdapterDiagnostics* diag) {
  const PartAssignment assignment = associate_parts(record, config.score_threshold, diag);
  std::vector<MultidimensionalVector> out;
  out.reserve(assignment.vehicle_box_indices.size());

  for (size_t vi = 0; vi < assignment.vehicle_box_indices.size(); ++vi) {
    const DetectionBox& veh = record.boxes[assignment.vehicle_box_indices[vi]];
    MultidimensionalVector v;
    v.channel = record.channel;
    v.bbox = veh.bbox;
    v.scores.vehicle = veh.score;

    for (ContactPointKind kind : kAllContactKinds) {
      const auto& slot = assignment.parts[vi][static_cast<size_t>(contact_kind_index(kind))];
      if (!slot) continue;
      const DetectionBox& part = record.boxes[*slot];
      const PixelPoint px = contact_point_from_bbox(part.bbox);
      const Result<GroundPoint> ground = camera.pixel_to_ground(px);
      if (!ground.ok()) {
        if (diag) ++diag->dropped_contact_points;
        note(diag, std::string(contact_kind_name(kind)) + " contact dropped: " +
                       err_name(ground.error()));
        continue;
      }
      v.set_contact(ContactPoint{kind, px, ground.value(), record.channel});
    }
    v.azimuth = compute_azimuth(v);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<MultidimensionalVector> make_type_vectors(const DetectionRecord& record,
                                                      const VehicleCatalog& catalog,
                                                      const AdapterConfig& config,
                                                      AdapterDiagnostics* diag) {
  // Highest-score label per vehicle bbox.
  std::vector<const TypeLabel*> chosen;
  for (const TypeLabel& label : record.type_labels) {
    const bool vehicle_survives = std::any_of(
        record.boxes.begin(), record.boxes.end(), [&](const DetectionBox& b) {
          return b.cls == PartClass::Vehicle && b.bbox == label.vehicle_bbox &&
                 b.score >= config.score_threshold;
        });
    if (!vehicle_survives) continue;
    auto it = std::find_if(chosen.begin(), chosen.end(), [&](const TypeLabel* held) {
      return held->vehicle_bbox == label.vehicle_bbox;
    });
    if (it == chosen.end()) {
      chosen.push_back(&label);
    } else if (label.score > (*it)->score) {
      *it = &label;
    }
  }

  std::vector<MultidimensionalVector> out;
  for (const TypeLabel* label : chosen) {
    MultidimensionalVector v;
    v.channel = record.channel;
    v.bbox = label->vehicle_bbox;
    const Result<VehicleTypeSpec> spec = catalog.lookup(label->type_name);
    if (!spec.ok()) {
      note(diag, "unknown vehicle type '" + label->type_name + "', label ignored");
      continue;
    }
    v.vehicle_type = label->type_name;
    v.dims = Dimensions{spec.value().l, spec.value().w, spec.value().h};
    v.overhangs = Overhangs{spec.value().fo, spec.value().ro};
    v.scores.type = label->score;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<MultidimensionalVector> make_heading_vectors(const DetectionRecord& record,
                                                         const AdapterConfig& config) {
  std::vector<MultidimensionalVector> out;
  for (const HeadingEstimate& est : record.heading_estimates) {
    const bool vehicle_survives = std::any_of(
        record.boxes.begin(), record.boxes.end(), [&](const DetectionBox& b) {
          return b.cls == PartClass::Vehicle && b.bbox == est.vehicle_bbox &&
                 b.score >= config.score_threshold;
        });
    if (!vehicle_survives) continue;
    auto it = std::find_if(out.begin(), out.end(), [&](const MultidimensionalVector& held) {
      return held.bbox == est.vehicle_bbox;
    });
    if (it != out.end()) {
      if (est.score > it->scores.heading.value_or(-1.0)) {
        it->heading_regressed = wrap_angle(est.heading);
        it->scores.heading = est.score;
      }
      continue;
    }
    MultidimensionalVector v;
    v.channel = record.channel;
    v.bbox = est.vehicle_bbox;
    v.heading_regressed = wrap_angle(est.heading);
    v.scores.heading = est.score;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<MultidimensionalVector> assemble_channel_vectors(
    const DetectionRecord& record, const FisheyeCamera& camera,
    const VehicleCatalog& catalog, const AdapterConfig& config, AdapterDiagnostics* diag) {
  std::vector<std::vector<MultidimensionalVector>> branches;
  branches.push_back(make_contact_vectors(record, camera, config, diag));
  branches.push_back(make_type_vectors(record, catalog, config, diag));
  branches.push_back(make_heading_vectors(record, config));

  Result<std::vector<MultidimensionalVector>> fused = fuse_branches(branches);
  // Branches come from one record, so same-bbox geometry is single-sourced;
  // a conflict here means corrupted input.
  if (!fused.ok()) {
    note(diag, std::string("stage-1 fusion failed: ") + err_name(fused.error()));
    return {};
  }
  std::vector<MultidimensionalVector> vectors = std::move(fused.value());

  for (MultidimensionalVector& v : vectors) {
    if (!v.vehicle_type && !config.strict_typing) {
      const Result<VehicleTypeSpec> spec = catalog.lookup(config.fallback_type);
      if (spec.ok()) {
        v.vehicle_type = config.fallback_type;
        v.dims = Dimensions{spec.value().l, spec.value().w, spec.value().h};
        v.overhangs = Overhangs{spec.value().fo, spec.value().ro};
      } else {
        note(diag, "fallback type '" + config.fallback_type + "' not in catalog");
      }
    }
    if (config.synthesize_bumper_points && v.heading_regressed &&
        !v.contact(ContactPointKind::FB) && !v.contact(ContactPointKind::RB)) {
      const PixelPoint px = contact_point_from_bbox(v.bbox);
      const Result<GroundPoint> ground = camera.pixel_to_ground(px);
      if (ground.ok()) {
        // Facing away from the camera means its rear bumper is what we see.
        const Vec2 to_point{ground.value().x - camera.translation.x,
                            ground.value().y - camera.translation.y};
        const bool facing_away = dot(heading_dir(*v.heading_regressed), to_point) > 0.0;
        v.set_contact(ContactPoint{facing_away ? ContactPointKind::RB : ContactPointKind::FB,
                                   px, ground.value(), record.channel});
      }
    }
    v.azimuth = compute_azimuth(v);
    if (v.contact_count() == 0 && !v.heading_regressed) {
      if (diag) ++diag->empty_geometry_vectors;
      note(diag, "vehicle with empty geometry (no contact points, no regressed heading)");
    }
  }

  std::sort(vectors.begin(), vectors.end(),
            [](const MultidimensionalVector& a, const MultidimensionalVector& b) {
              if (a.bbox.x != b.bbox.x) return a.bbox.x < b.bbox.x;
              return a.bbox.y < b.bbox.y;
            });
  return vectors;
}

}  // namespace svbev
