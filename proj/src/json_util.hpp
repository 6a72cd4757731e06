#pragma once

#include <initializer_list>
#include <string>

#include <json.hpp>

#include "svbev/errors.hpp"

namespace svbev::detail {

using nlohmann::json;

/// Strict field check: every key must be known, every required key present.
void require_keys(const json& obj, const char* context,
                  std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional = {});

double get_number(const json& obj, const char* context, const char* key);
double get_number_opt(const json& obj, const char* context, const char* key,
                      double fallback);
bool get_bool_opt(const json& obj, const char* context, const char* key, bool fallback);
std::string get_string(const json& obj, const char* context, const char* key);
const json& get_array(const json& obj, const char* context, const char* key);
const json& get_object(const json& obj, const char* context, const char* key);

/// Checks the {"format": ..., "version": ...} envelope of a document.
void check_format(const json& obj, const char* context, const char* expected_format,
                  int expected_version);

json parse_document(const std::string& text, const char* context);

}  // namespace svbev::detail
