#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace fbl {

/// Validator for the JSON Schema subset used by the published result schema:
/// type, const, enum, pattern, minimum, minItems, maxItems, items, properties,
/// required, additionalProperties, allOf, anyOf, oneOf, if/then/else and local
/// "$ref": "#/$defs/...". Unknown keywords are ignored, as the standard asks.
class SchemaValidator {
 public:
  explicit SchemaValidator(nlohmann::json schema);

  /// Empty when the instance is valid; otherwise one line per violation,
  /// each prefixed by a JSON pointer to the offending value.
  std::vector<std::string> validate(const nlohmann::json& instance) const;
  bool valid(const nlohmann::json& instance) const { return validate(instance).empty(); }

 private:
  void check(const nlohmann::json& schema, const nlohmann::json& value, const std::string& where,
             std::vector<std::string>& errors) const;
  const nlohmann::json& resolve(const std::string& ref) const;

  nlohmann::json root_;
};

/// Reads and parses a schema file; throws std::runtime_error when it cannot.
nlohmann::json load_schema(const std::string& path);

}  // namespace fbl
