#pragma once

#include <map>
#include <string>
#include <vector>

#include "svbev/errors.hpp"
#include "svbev/result.hpp"

namespace svbev {

/// Per-type dimension and overhang catalog entry, meters.
struct VehicleTypeSpec {
  std::string type_name;
  double l = 0.0;   // length
  double w = 0.0;   // width
  double h = 0.0;   // height
  double fo = 0.0;  // front overhang
  double ro = 0.0;  // rear overhang
};

std::vector<std::string> type_spec_violations(const VehicleTypeSpec& spec);

/// Read-only vehicle type catalog; the shipped default carries 8 entries.
class VehicleCatalog {
 public:
  static VehicleCatalog from_json(const std::string& json_text);
  static VehicleCatalog from_file(const std::string& path);
  /// For tests and synthetic setups.
  static VehicleCatalog from_specs(const std::vector<VehicleTypeSpec>& specs);

  Result<VehicleTypeSpec> lookup(const std::string& type_name) const;
  bool contains(const std::string& type_name) const;
  size_t size() const { return specs_.size(); }
  /// Sorted type names (deterministic iteration order).
  std::vector<std::string> names() const;

 private:
  std::map<std::string, VehicleTypeSpec> specs_;
};

}  // namespace svbev
