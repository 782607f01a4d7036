#include "tag/core/json_loader.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tag {

namespace {

int line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

int int_property(const nlohmann::json& props, const char* key, int fallback) {
  if (!props.contains(key)) return fallback;
  const auto& v = props.at(key);
  if (!v.is_number_integer()) throw SchemaError(std::string("property '") + key + "' must be an integer");
  return v.get<int>();
}

Component component_from_entry(const nlohmann::json& entry) {
  if (!entry.is_object()) throw SchemaError("component entry must be an object");
  if (!entry.contains("kind") || !entry.at("kind").is_string()) throw SchemaError("component entry needs a string 'kind'");
  const auto kind = entry.at("kind").get<std::string>();
  const auto name = entry.value("name", std::string{});
  const nlohmann::json props = entry.value("properties", nlohmann::json::object());
  if (!props.is_object()) throw SchemaError("'properties' must be an object");

  Component c;
  c.name = name;
  if (kind == "card") {
    Properties p;
    for (const auto& [key, value] : props.items()) p.emplace(key, property_from_json(value));
    c.body = Card(std::move(p));
  } else if (kind == "counter") {
    const int min = int_property(props, "min", 0);
    const int max = int_property(props, "max", min);
    c.body = Counter(min, max, int_property(props, "value", min));
  } else if (kind == "token") {
    Token t{name, std::nullopt};
    if (props.contains("position")) t.position = int_property(props, "position", 0);
    c.body = std::move(t);
  } else if (kind == "die") {
    c.body = Die(int_property(props, "sides", 6), int_property(props, "value", 1));
  } else {
    throw SchemaError("unknown component kind '" + kind + "'");
  }
  return c;
}

}  // namespace

PropertyValue property_from_json(const nlohmann::json& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) return v.get<double>();
  if (v.is_string()) return v.get<std::string>();
  throw SchemaError("property values must be strings, numbers or booleans");
}

nlohmann::json property_to_json(const PropertyValue& v) {
  return std::visit([](const auto& x) { return nlohmann::json(x); }, v);
}

std::vector<Component> components_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw SchemaError("component file must be a top-level array");
  std::vector<Component> out;
  for (const auto& entry : j) {
    Component c = component_from_entry(entry);
    int count = 1;
    if (entry.contains("count")) {
      if (!entry.at("count").is_number_integer()) throw SchemaError("'count' must be an integer");
      count = entry.at("count").get<int>();
      if (count < 0) throw SchemaError("'count' must not be negative");
    }
    for (int i = 0; i < count; ++i) out.push_back(c);
  }
  return out;
}

std::vector<Component> parse_json_components(std::string_view text, std::string_view source) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const int line = line_of(text, e.byte == 0 ? 0 : e.byte - 1);
    std::ostringstream msg;
    msg << source << ":" << line << ": " << e.what();
    throw JsonParseError(msg.str(), line);
  }
  return components_from_json(j);
}

std::vector<Component> load_json_components(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open component file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_components(buffer.str(), path.string());
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("TAG_DATA_DIR"); env != nullptr && *env != '\0') return env;
#ifdef TAG_DEFAULT_DATA_DIR
  return TAG_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

}  // namespace tag
