#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "svbev/vector_types.hpp"

namespace svbev {

/// Detector box classes. The detector tells front from rear wheels; it does
/// not tell left from right (that is recovered geometrically downstream).
enum class PartClass { Vehicle, FrontWheel, RearWheel, FrontBumper, RearBumper };

const char* part_class_name(PartClass c);
std::optional<PartClass> part_class_from_name(std::string_view name);

/// Maps a part class to its contact point kind; Vehicle has none.
std::optional<ContactPointKind> contact_kind_of(PartClass c);

struct DetectionBox {
  PartClass cls = PartClass::Vehicle;
  BBox bbox;
  double score = 0.0;
};

struct TypeLabel {
  BBox vehicle_bbox;
  std::string type_name;
  double score = 0.0;
};

struct HeadingEstimate {
  BBox vehicle_bbox;
  double heading = 0.0;  // radians
  double score = 0.0;
};

/// One channel's raw detector output for one frame.
struct DetectionRecord {
  Channel channel = Channel::Front;
  uint64_t frame_id = 0;
  std::vector<DetectionBox> boxes;
  std::vector<TypeLabel> type_labels;
  std::vector<HeadingEstimate> heading_estimates;
};

/// Invariant check: positive box extents, scores in [0,1], and every type
/// label / heading estimate referencing a vehicle box present in boxes.
std::vector<std::string> validate_detection_record(const DetectionRecord& record);

}  // namespace svbev
