#include "tag/agents/rhea_agent.hpp"

#include <algorithm>

#include "tag/core/errors.hpp"

namespace tag {

void RheaParams::validate() const {
  if (horizon < 1) throw InvalidArgumentError("rhea horizon L must be at least 1");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidArgumentError("rhea gamma must lie in (0, 1]");
  if (budget < 1) throw InvalidArgumentError("rhea budget must be positive");
}

RheaAgent::RheaAgent(RheaParams params, std::uint64_t seed) : params_(params), rng_(seed) { params_.validate(); }

RheaAgent::Individual RheaAgent::rollout(const GameState& root, const std::vector<ActionPtr>& genes,
                                         std::size_t keep) {
  Individual out;
  auto state = root.copy();
  double discount = 1.0;
  const auto horizon = static_cast<std::size_t>(params_.horizon);
  while (out.genes.size() < horizon && !state->is_terminal()) {
    const auto actions = forward_model().compute_available_actions(*state);
    const bool own = state->current_player() == player_id();
    ActionPtr chosen;
    if (own && out.genes.size() < keep) {
      const ActionPtr& wanted = genes[out.genes.size()];
      auto it = std::find_if(actions.begin(), actions.end(), [&](const ActionPtr& a) { return a->equals(*wanted); });
      if (it != actions.end()) chosen = *it;
    }
    if (!chosen) chosen = actions[rng_.uniform(actions.size())];
    forward_model().next(*state, *chosen);
    ++calls_;
    if (own) {
      out.genes.push_back(chosen);
      out.fitness += discount * evaluate(*state);
      discount *= params_.gamma;
    }
  }
  return out;
}

ActionPtr RheaAgent::get_action(const GameState& observation, std::span<const ActionPtr> actions) {
  if (actions.empty()) throw InvalidArgumentError("rhea agent offered no actions");
  if (actions.size() == 1) return actions.front();

  calls_ = 0;
  best_ = rollout(observation, {}, 0);
  while (calls_ < params_.budget) {
    // Mutation: keep a prefix, redraw the chosen gene and everything after it.
    const std::size_t point = best_.genes.empty() ? 0 : rng_.uniform(best_.genes.size());
    Individual child = rollout(observation, best_.genes, point);
    if (child.fitness >= best_.fitness) best_ = std::move(child);
  }
  const ActionPtr& first = best_.genes.front();
  for (const auto& a : actions) {
    if (a->equals(*first)) return a;
  }
  throw TagError("rhea: best sequence does not start with an offered action");
}

}  // namespace tag
