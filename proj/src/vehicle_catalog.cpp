#include "svbev/vehicle_catalog.hpp"

#include "json_util.hpp"
#include "svbev/camera_rig.hpp"

namespace svbev {

std::vector<std::string> type_spec_violations(const VehicleTypeSpec& spec) {
  std::vector<std::string> out;
  if (!(spec.w > 0.0 && spec.w < spec.l)) out.push_back("requires 0 < w < l");
  if (!(spec.fo + spec.ro > 0.0 && spec.fo + spec.ro < spec.l)) {
    out.push_back("requires 0 < fo + ro < l");
  }
  if (!(spec.h > 0.0)) out.push_back("requires h > 0");
  if (!(spec.fo > 0.0) || !(spec.ro > 0.0)) out.push_back("overhangs must be positive");
  return out;
}

VehicleCatalog VehicleCatalog::from_json(const std::string& json_text) {
  using detail::json;
  json doc = detail::parse_document(json_text, "vehicle types");
  detail::check_format(doc, "vehicle types", "svbev-vehicle-types", 1);
  detail::require_keys(doc, "vehicle types", {"format", "version", "types"});
  const json& types = detail::get_object(doc, "vehicle types", "types");
  if (types.empty()) {
    throw ConfigError(ConfigError::Kind::BadValue, "vehicle types: catalog must not be empty");
  }
  std::vector<VehicleTypeSpec> specs;
  for (const auto& item : types.items()) {
    const std::string ctx = "vehicle type '" + item.key() + "'";
    detail::require_keys(item.value(), ctx.c_str(), {"l", "w", "h", "fo", "ro"});
    VehicleTypeSpec spec;
    spec.type_name = item.key();
    spec.l = detail::get_number(item.value(), ctx.c_str(), "l");
    spec.w = detail::get_number(item.value(), ctx.c_str(), "w");
    spec.h = detail::get_number(item.value(), ctx.c_str(), "h");
    spec.fo = detail::get_number(item.value(), ctx.c_str(), "fo");
    spec.ro = detail::get_number(item.value(), ctx.c_str(), "ro");
    for (const std::string& v : type_spec_violations(spec)) {
      throw ConfigError(ConfigError::Kind::BadValue, ctx + ": " + v);
    }
    specs.push_back(std::move(spec));
  }
  return from_specs(specs);
}

VehicleCatalog VehicleCatalog::from_file(const std::string& path) {
  return from_json(read_text_file(path));
}

VehicleCatalog VehicleCatalog::from_specs(const std::vector<VehicleTypeSpec>& specs) {
  VehicleCatalog catalog;
  for (const auto& spec : specs) {
    catalog.specs_[spec.type_name] = spec;
  }
  return catalog;
}

Result<VehicleTypeSpec> VehicleCatalog::lookup(const std::string& type_name) const {
  auto it = specs_.find(type_name);
  if (it == specs_.end()) return Err::UnknownVehicleType;
  return it->second;
}

bool VehicleCatalog::contains(const std::string& type_name) const {
  return specs_.count(type_name) > 0;
}

std::vector<std::string> VehicleCatalog::names() const {
  std::vector<std::string> out;
  out.reserve(specs_.size());
  for (const auto& [name, spec] : specs_) out.push_back(name);
  return out;
}

}  // namespace svbev
