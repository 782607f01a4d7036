#include "tag/agents/random_agent.hpp"

#include "tag/core/errors.hpp"

namespace tag {

ActionPtr RandomAgent::get_action(const GameState& /*observation*/, std::span<const ActionPtr> actions) {
  if (actions.empty()) throw InvalidArgumentError("random agent offered no actions");
  return actions[rng_.uniform(actions.size())];
}

}  // namespace tag
