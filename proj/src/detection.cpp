#include "svbev/detection.hpp"

#include <algorithm>

namespace svbev {

const char* part_class_name(PartClass c) {
  switch (c) {
    case PartClass::Vehicle: return "vehicle";
    case PartClass::FrontWheel: return "front_wheel";
    case PartClass::RearWheel: return "rear_wheel";
    case PartClass::FrontBumper: return "front_bumper";
    case PartClass::RearBumper: return "rear_bumper";
  }
  return "invalid";
}

std::optional<PartClass> part_class_from_name(std::string_view name) {
  for (PartClass c : {PartClass::Vehicle, PartClass::FrontWheel, PartClass::RearWheel,
                      PartClass::FrontBumper, PartClass::RearBumper}) {
    if (name == part_class_name(c)) return c;
  }
  return std::nullopt;
}

std::optional<ContactPointKind> contact_kind_of(PartClass c) {
  switch (c) {
    case PartClass::Vehicle: return std::nullopt;
    case PartClass::FrontWheel: return ContactPointKind::FW;
    case PartClass::RearWheel: return ContactPointKind::RW;
    case PartClass::FrontBumper: return ContactPointKind::FB;
    case PartClass::RearBumper: return ContactPointKind::RB;
  }
  return std::nullopt;
}

std::vector<std::string> validate_detection_record(const DetectionRecord& record) {
  std::vector<std::string> out;
  auto score_ok = [](double s) { return s >= 0.0 && s <= 1.0; };
  auto has_vehicle_box = [&record](const BBox& b) {
    return std::any_of(record.boxes.begin(), record.boxes.end(), [&b](const DetectionBox& d) {
      return d.cls == PartClass::Vehicle && d.bbox == b;
    });
  };

  for (size_t i = 0; i < record.boxes.size(); ++i) {
    const DetectionBox& b = record.boxes[i];
    if (!(b.bbox.w > 0.0) || !(b.bbox.l > 0.0)) {
      out.push_back("boxes[" + std::to_string(i) + "]: non-positive extent");
    }
    if (!score_ok(b.score)) {
      out.push_back("boxes[" + std::to_string(i) + "]: score outside [0,1]");
    }
  }
  for (size_t i = 0; i < record.type_labels.size(); ++i) {
    const TypeLabel& t = record.type_labels[i];
    if (!score_ok(t.score)) {
      out.push_back("type_labels[" + std::to_string(i) + "]: score outside [0,1]");
    }
    if (!has_vehicle_box(t.vehicle_bbox)) {
      out.push_back("type_labels[" + std::to_string(i) + "]: references no vehicle box");
    }
  }
  for (size_t i = 0; i < record.heading_estimates.size(); ++i) {
    const HeadingEstimate& h = record.heading_estimates[i];
    if (!score_ok(h.score)) {
      out.push_back("heading_estimates[" + std::to_string(i) + "]: score outside [0,1]");
    }
    if (!has_vehicle_box(h.vehicle_bbox)) {
      out.push_back("heading_estimates[" + std::to_string(i) + "]: references no vehicle box");
    }
  }
  return out;
}

}  // namespace svbev
