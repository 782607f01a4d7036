#pragma once

#include <cstdint>
#include <memory>

#include "json.hpp"
#include "tag/core/rng.hpp"

namespace tag {

/// Knobs of one game. Concrete games derive and add their own fields.
class GameParameters {
 public:
  virtual ~GameParameters() = default;

  std::uint64_t seed = 0;

  virtual std::unique_ptr<GameParameters> clone() const = 0;
  /// Serializes every knob, seed included.
  virtual nlohmann::json to_json() const;
  /// Reads the knobs present in `j`; absent keys keep their current value.
  virtual void from_json(const nlohmann::json& j);
  /// Draws a random but valid variant of the rules.
  virtual void randomize(Rng&) {}
  /// Throws InvalidArgumentError if a knob is out of range.
  virtual void validate() const {}
};

}  // namespace tag
