// Internal helpers for reading JSON with located errors.
#pragma once

#include <string>

#include "eosb/core.hpp"
#include "json.hpp"

namespace eosb::jsonutil {

using nlohmann::json;

inline json parse(std::string_view bytes) {
  try {
    return json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), "byte " + std::to_string(e.byte));
  }
}

inline const json& at(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw ParseError("expected object", path);
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing key '") + key + "'", path);
  return *it;
}

template <typename T>
T get(const json& j, const char* key, const std::string& path) {
  const json& v = at(j, key, path);
  try {
    return v.get<T>();
  } catch (const json::exception& e) {
    throw ParseError(e.what(), path + "/" + key);
  }
}

template <typename T>
T get_or(const json& j, const char* key, T fallback, const std::string& path) {
  if (!j.is_object()) throw ParseError("expected object", path);
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return fallback;
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw ParseError(e.what(), path + "/" + key);
  }
}

inline const json& array_at(const json& j, const char* key, const std::string& path) {
  const json& v = at(j, key, path);
  if (!v.is_array()) throw ParseError(std::string("expected array for '") + key + "'", path);
  return v;
}

inline void expect_schema(const json& j, const char* type) {
  const int version = get<int>(j, "schema_version", "");
  if (version != kSchemaVersion) {
    throw ParseError("unsupported schema_version " + std::to_string(version), "/schema_version");
  }
  if (get<std::string>(j, "type", "") != type) {
    throw ParseError(std::string("expected document type '") + type + "'", "/type");
  }
}

}  // namespace eosb::jsonutil
