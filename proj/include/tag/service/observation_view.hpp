#pragma once

#include <span>
#include <string>

#include "json.hpp"
#include "tag/core/action.hpp"
#include "tag/core/game_state.hpp"

namespace tag {

/// JSON for one component as `viewer` sees it. Elements of partially
/// observable decks that the viewer cannot see become `{"hidden": true}`,
/// without id or properties. kNoPlayer sees only what every player sees.
nlohmann::json component_view(const GameState& state, ComponentId id, int viewer);

/// The full table as `viewer` sees it; `state` should already be
/// `copy(viewer)` of the canonical state.
nlohmann::json table_view(const GameState& state, int viewer);

struct OfferedAction {
  std::string id;
  std::string label;
};

/// ObservationView document: table view plus the viewer's own heuristic,
/// turn information and (when it is the viewer's decision) offered actions.
nlohmann::json observation_view(const GameState& observation, int viewer, std::span<const OfferedAction> actions);

}  // namespace tag
