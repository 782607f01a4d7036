#pragma once

#include "tag/core/agent.hpp"

namespace tag {

class RandomAgent final : public Agent {
 public:
  explicit RandomAgent(std::uint64_t seed = 0) : rng_(seed) {}

  ActionPtr get_action(const GameState& observation, std::span<const ActionPtr> actions) override;
  std::string name() const override { return "random"; }

 private:
  Rng rng_;
};

}  // namespace tag
