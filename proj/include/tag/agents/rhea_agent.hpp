#pragma once

#include <vector>

#include "tag/core/agent.hpp"

namespace tag {

struct RheaParams {
  int horizon = 10;       ///< own actions per individual
  double gamma = 0.9;     ///< discount per own action
  int budget = 2000;      ///< forward-model next calls per decision
  void validate() const;
};

/// (1+1) rolling-horizon evolution over sequences of own actions. Opponent
/// turns inside a rollout are played by a uniform random model.
class RheaAgent final : public Agent {
 public:
  explicit RheaAgent(RheaParams params = {}, std::uint64_t seed = 0);

  ActionPtr get_action(const GameState& observation, std::span<const ActionPtr> actions) override;
  std::string name() const override { return "rhea"; }
  const RheaParams& params() const { return params_; }

  struct Individual {
    std::vector<ActionPtr> genes;
    double fitness = 0.0;
  };
  /// Best individual of the most recent decision.
  const Individual& last_best() const { return best_; }

 private:
  /// Replays genes [0, keep) where still legal and draws the rest at random.
  Individual rollout(const GameState& root, const std::vector<ActionPtr>& genes, std::size_t keep);

  RheaParams params_;
  Rng rng_;
  int calls_ = 0;
  Individual best_;
};

}  // namespace tag
