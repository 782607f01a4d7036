#include "tag/core/parameters.hpp"

namespace tag {

nlohmann::json GameParameters::to_json() const { return {{"seed", seed}}; }

void GameParameters::from_json(const nlohmann::json& j) {
  if (j.contains("seed")) seed = j.at("seed").get<std::uint64_t>();
}

}  // namespace tag
