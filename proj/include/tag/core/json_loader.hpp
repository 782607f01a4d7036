#pragma once

#include <filesystem>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tag/core/component.hpp"
#include "tag/core/errors.hpp"

namespace tag {

class JsonParseError : public TagError {
 public:
  JsonParseError(const std::string& what, int line) : TagError(what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class SchemaError : public TagError {
 public:
  using TagError::TagError;
};

/// Reads a component file: a top-level array of
/// `{"kind", "name", "properties", "count"}` entries. Entries with a count are
/// expanded into that many components. IDs are assigned at registration.
std::vector<Component> load_json_components(const std::filesystem::path& path);
std::vector<Component> parse_json_components(std::string_view text, std::string_view source = "<string>");
std::vector<Component> components_from_json(const nlohmann::json& j);

PropertyValue property_from_json(const nlohmann::json& v);
nlohmann::json property_to_json(const PropertyValue& v);

/// `TAG_DATA_DIR` when set, otherwise the data directory of the source tree.
std::filesystem::path data_dir();

}  // namespace tag
