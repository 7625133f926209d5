// Structural validator for the checked-in report schemas. Supports the
// subset of JSON Schema the schemas use: type, properties, required,
// items, enum, additionalProperties.
#pragma once

#include <json.hpp>

#include <string>

namespace schemacheck {

using nlohmann::json;

inline bool type_matches(const json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "number") return value.is_number();
  if (type == "integer") return value.is_number_integer();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

inline void validate(const json& value, const json& schema, std::string path,
                     std::vector<std::string>& errors) {
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_array()) {
      for (const auto& alt : t)
        ok = ok || type_matches(value, alt.get<std::string>());
    } else {
      ok = type_matches(value, t.get<std::string>());
    }
    if (!ok) {
      errors.push_back(path + ": type mismatch, expected " + t.dump());
      return;
    }
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& alt : schema["enum"]) ok = ok || alt == value;
    if (!ok) errors.push_back(path + ": value not in enum");
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema["required"])
        if (!value.contains(key.get<std::string>()))
          errors.push_back(path + ": missing required key '" +
                           key.get<std::string>() + "'");
    if (schema.contains("properties")) {
      for (const auto& [key, sub] : schema["properties"].items())
        if (value.contains(key))
          validate(value[key], sub, path + "/" + key, errors);
      if (schema.value("additionalProperties", true) == false)
        for (const auto& [key, sub] : value.items())
          if (!schema["properties"].contains(key))
            errors.push_back(path + ": unexpected key '" + key + "'");
    }
  }
  if (value.is_array() && schema.contains("items")) {
    std::size_t i = 0;
    for (const auto& item : value)
      validate(item, schema["items"], path + "[" + std::to_string(i++) + "]",
               errors);
  }
}

inline std::vector<std::string> validate(const json& value, const json& schema) {
  std::vector<std::string> errors;
  validate(value, schema, "$", errors);
  return errors;
}

}  // namespace schemacheck
