#pragma once

#include "tag/core/agent.hpp"

namespace tag {

/// Greedy one-step lookahead: the action whose successor scores best for us.
/// Ties are broken uniformly at random.
class OslaAgent final : public Agent {
 public:
  explicit OslaAgent(std::uint64_t seed = 0) : rng_(seed) {}

  ActionPtr get_action(const GameState& observation, std::span<const ActionPtr> actions) override;
  std::string name() const override { return "osla"; }

 private:
  Rng rng_;
};

}  // namespace tag
