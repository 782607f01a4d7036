#include "tag/agents/osla_agent.hpp"

#include <limits>
#include <vector>

#include "tag/core/errors.hpp"

namespace tag {

ActionPtr OslaAgent::get_action(const GameState& observation, std::span<const ActionPtr> actions) {
  if (actions.empty()) throw InvalidArgumentError("osla agent offered no actions");
  if (actions.size() == 1) return actions.front();

  double best = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    auto next = observation.copy();
    forward_model().next(*next, *actions[i]);
    const double v = evaluate(*next);
    if (v > best) {
      best = v;
      ties.assign(1, i);
    } else if (v == best) {
      ties.push_back(i);
    }
  }
  return actions[ties[rng_.uniform(ties.size())]];
}

}  // namespace tag
