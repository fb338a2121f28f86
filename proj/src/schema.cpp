#include "fbl/schema.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <regex>
#include <stdexcept>

namespace fbl {

namespace {

using nlohmann::json;

bool has_type(const json& value, const std::string& type) {
  if (type == "null") return value.is_null();
  if (type == "boolean") return value.is_boolean();
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "number") return value.is_number();
  if (type == "integer") {
    if (value.is_number_integer()) return true;
    return value.is_number_float() && std::floor(value.get<double>()) == value.get<double>();
  }
  throw std::runtime_error("unknown schema type '" + type + "'");
}

std::string child(const std::string& where, const std::string& key) { return where + "/" + key; }

}  // namespace

SchemaValidator::SchemaValidator(json schema) : root_(std::move(schema)) {}

const json& SchemaValidator::resolve(const std::string& ref) const {
  const std::string prefix = "#/$defs/";
  if (ref.rfind(prefix, 0) != 0) throw std::runtime_error("unsupported $ref '" + ref + "'");
  const auto name = ref.substr(prefix.size());
  const auto& defs = root_.at("$defs");
  if (!defs.contains(name)) throw std::runtime_error("unresolved $ref '" + ref + "'");
  return defs.at(name);
}

std::vector<std::string> SchemaValidator::validate(const json& instance) const {
  std::vector<std::string> errors;
  check(root_, instance, "", errors);
  return errors;
}

void SchemaValidator::check(const json& schema, const json& value, const std::string& where,
                            std::vector<std::string>& errors) const {
  if (schema.is_boolean()) {
    if (!schema.get<bool>()) errors.push_back(where + ": no value is allowed here");
    return;
  }
  const std::string at = where.empty() ? "/" : where;
  if (schema.contains("$ref")) check(resolve(schema.at("$ref").get<std::string>()), value, where, errors);

  if (schema.contains("type")) {
    const auto& t = schema.at("type");
    bool ok = false;
    if (t.is_string())
      ok = has_type(value, t.get<std::string>());
    else
      for (const auto& option : t) ok = ok || has_type(value, option.get<std::string>());
    if (!ok) {
      errors.push_back(at + ": expected type " + t.dump() + ", got " + value.type_name());
      return;
    }
  }
  if (schema.contains("const") && value != schema.at("const"))
    errors.push_back(at + ": expected " + schema.at("const").dump());
  if (schema.contains("enum")) {
    const auto& options = schema.at("enum");
    if (std::find(options.begin(), options.end(), value) == options.end())
      errors.push_back(at + ": " + value.dump() + " is not one of " + options.dump());
  }
  if (value.is_string() && schema.contains("pattern")) {
    const std::regex re(schema.at("pattern").get<std::string>(), std::regex::ECMAScript);
    if (!std::regex_search(value.get<std::string>(), re))
      errors.push_back(at + ": " + value.dump() + " does not match " + schema.at("pattern").dump());
  }
  if (value.is_number() && schema.contains("minimum") && value.get<double>() < schema.at("minimum").get<double>())
    errors.push_back(at + ": " + value.dump() + " is below the minimum " + schema.at("minimum").dump());

  if (value.is_array()) {
    if (schema.contains("minItems") && value.size() < schema.at("minItems").get<std::size_t>())
      errors.push_back(at + ": fewer than " + schema.at("minItems").dump() + " items");
    if (schema.contains("maxItems") && value.size() > schema.at("maxItems").get<std::size_t>())
      errors.push_back(at + ": more than " + schema.at("maxItems").dump() + " items");
    if (schema.contains("items"))
      for (std::size_t i = 0; i < value.size(); ++i)
        check(schema.at("items"), value[i], child(where, std::to_string(i)), errors);
  }

  if (value.is_object()) {
    if (schema.contains("required"))
      for (const auto& key : schema.at("required"))
        if (!value.contains(key.get<std::string>()))
          errors.push_back(at + ": missing required property " + key.dump());
    const json no_properties = json::object();
    const auto& properties = schema.contains("properties") ? schema.at("properties") : no_properties;
    for (const auto& [key, item] : value.items()) {
      if (properties.contains(key))
        check(properties.at(key), item, child(where, key), errors);
      else if (schema.contains("additionalProperties"))
        check(schema.at("additionalProperties"), item, child(where, key), errors);
    }
  }

  auto passes = [&](const json& sub) {
    std::vector<std::string> scratch;
    check(sub, value, where, scratch);
    return scratch.empty();
  };
  if (schema.contains("allOf"))
    for (const auto& sub : schema.at("allOf")) check(sub, value, where, errors);
  if (schema.contains("anyOf")) {
    bool any = false;
    for (const auto& sub : schema.at("anyOf")) any = any || passes(sub);
    if (!any) errors.push_back(at + ": matches none of the anyOf alternatives");
  }
  if (schema.contains("oneOf")) {
    std::size_t matches = 0;
    for (const auto& sub : schema.at("oneOf")) matches += passes(sub) ? 1 : 0;
    if (matches != 1)
      errors.push_back(at + ": matches " + std::to_string(matches) + " oneOf alternatives instead of 1");
  }
  if (schema.contains("if")) {
    if (passes(schema.at("if"))) {
      if (schema.contains("then")) check(schema.at("then"), value, where, errors);
    } else if (schema.contains("else")) {
      check(schema.at("else"), value, where, errors);
    }
  }
}

json load_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open schema '" + path + "'");
  return json::parse(in);
}

}  // namespace fbl
