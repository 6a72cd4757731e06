#include "json_util.hpp"

#include <algorithm>

namespace svbev::detail {

void require_keys(const json& obj, const char* context,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional) {
  if (!obj.is_object()) {
    throw ConfigError(ConfigError::Kind::BadValue,
                      std::string(context) + ": expected an object");
  }
  for (const auto& item : obj.items()) {
    const std::string& key = item.key();
    auto match = [&key](const char* k) { return key == k; };
    if (!std::any_of(required.begin(), required.end(), match) &&
        !std::any_of(optional.begin(), optional.end(), match)) {
      throw ConfigError(ConfigError::Kind::UnknownField,
                        std::string(context) + ": unknown field '" + key + "'");
    }
  }
  for (const char* k : required) {
    if (!obj.contains(k)) {
      throw ConfigError(ConfigError::Kind::MissingField,
                        std::string(context) + ": missing field '" + k + "'");
    }
  }
}

double get_number(const json& obj, const char* context, const char* key) {
  if (!obj.contains(key) || !obj[key].is_number()) {
    throw ConfigError(ConfigError::Kind::BadValue,
                      std::string(context) + ": field '" + key + "' must be a number");
  }
  return obj[key].get<double>();
}

double get_number_opt(const json& obj, const char* context, const char* key,
                      double fallback) {
  if (!obj.contains(key)) return fallback;
  return get_number(obj, context, key);
}

bool get_bool_opt(const json& obj, const char* context, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) {
    throw ConfigError(ConfigError::Kind::BadValue,
                      std::string(context) + ": field '" + key + "' must be a boolean");
  }
  return obj[key].get<bool>();
}

std::string get_string(const json& obj, const char* context, const char* key) {
  if (!obj.contains(key) || !obj[key].is_string()) {
    throw ConfigError(ConfigError::Kind::BadValue,
                      std::string(context) + ": field '" + key + "' must be a string");
  }
  return obj[key].get<std::string>();
}

const json& get_array(const json& obj, const char* context, const char* key) {
  if (!obj.contains(key) || !obj[key].is_array()) {
    throw ConfigError(ConfigError::Kind::BadValue,
                      std::string(context) + ": field '" + key + "' must be an array");
  }
  return obj[key];
}

const json& get_object(const json& obj, const char* context, const char* key) {
  if (!obj.contains(key) || !obj[key].is_object()) {
    throw ConfigError(ConfigError::Kind::BadValue,
                      std::string(context) + ": field '" + key + "' must be an object");
  }
  return obj[key];
}

void check_format(const json& obj, const char* context, const char* expected_format,
                  int expected_version) {
  if (!obj.is_object() || !obj.contains("format") || !obj["format"].is_string() ||
      obj["format"].get<std::string>() != expected_format) {
    throw ConfigError(ConfigError::Kind::BadFormat,
                      std::string(context) + ": expected format '" + expected_format + "'");
  }
  if (!obj.contains("version") || !obj["version"].is_number_integer() ||
      obj["version"].get<int>() != expected_version) {
    throw ConfigError(ConfigError::Kind::BadFormat,
                      std::string(context) + ": unsupported version");
  }
}

json parse_document(const std::string& text, const char* context) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) {
    throw ConfigError(ConfigError::Kind::ParseError,
                      std::string(context) + ": malformed JSON");
  }
  return doc;
}

}  // namespace svbev::detail
