#pragma once

#include <memory>
#include <span>
#include <string>

#include "tag/core/action.hpp"
#include "tag/core/forward_model.hpp"
#include "tag/core/game_state.hpp"

namespace tag {

/// Scores a state for one player. Must be finite on every reachable state.
class StateHeuristic {
 public:
  virtual ~StateHeuristic() = default;
  virtual double evaluate(const GameState& state, int player) const = 0;
};

/// The game's own score function.
class GameScoreHeuristic final : public StateHeuristic {
 public:
  double evaluate(const GameState& state, int player) const override { return state.score(player); }
};

/// Multiplies another heuristic by a constant.
class ScaledHeuristic final : public StateHeuristic {
 public:
  ScaledHeuristic(std::shared_ptr<const StateHeuristic> inner, double factor)
      : inner_(std::move(inner)), factor_(factor) {}
  double evaluate(const GameState& state, int player) const override {
    return factor_ * inner_->evaluate(state, player);
  }

 private:
  std::shared_ptr<const StateHeuristic> inner_;
  double factor_;
};

/// A seat at the table. The engine asks for an action only when more than one
/// is available; otherwise it just shows the agent the new observation.
class Agent {
 public:
  virtual ~Agent() = default;

  void initialize(int player_id, std::shared_ptr<const ForwardModel> forward_model) {
    player_id_ = player_id;
    forward_model_ = std::move(forward_model);
    on_initialize();
  }

  /// Must return one of `actions` (or an action equal to one of them).
  virtual ActionPtr get_action(const GameState& observation, std::span<const ActionPtr> actions) = 0;
  virtual void register_updated_observation(const GameState& /*observation*/) {}
  virtual void finalize(const GameState& /*final_observation*/) {}
  virtual std::string name() const = 0;

  int player_id() const { return player_id_; }
  void set_heuristic(std::shared_ptr<const StateHeuristic> heuristic) { heuristic_ = std::move(heuristic); }
  const StateHeuristic& heuristic() const { return *heuristic_; }

 protected:
  virtual void on_initialize() {}
  double evaluate(const GameState& state) const { return heuristic_->evaluate(state, player_id_); }
  const ForwardModel& forward_model() const { return *forward_model_; }

 private:
  int player_id_ = kNoPlayer;
  std::shared_ptr<const ForwardModel> forward_model_;
  std::shared_ptr<const StateHeuristic> heuristic_ = std::make_shared<GameScoreHeuristic>();
};

}  // namespace tag
