#pragma once

#include <memory>
#include <vector>

#include "tag/core/action.hpp"
#include "tag/core/game_state.hpp"

namespace tag {

/// Game rules: setup, transition and legal-action generation. The only thing
/// that mutates a canonical state. Forward models hold no mutable data; all
/// randomness comes from the state's own stream.
class ForwardModel {
 public:
  virtual ~ForwardModel() = default;

  /// Resets `state` to pre-setup and builds the initial position.
  void setup(GameState& state) const;

  /// Applies `action`, counts a tick, runs the game rules that follow it.
  void next(GameState& state, const Action& action) const;

  /// Legal actions for the current player; empty once the game has ended.
  std::vector<ActionPtr> compute_available_actions(const GameState& state) const;

  virtual std::unique_ptr<ForwardModel> copy() const = 0;

  /// Extra work once the game is over.
  virtual void end_game(GameState& /*state*/) const {}

 protected:
  virtual void do_setup(GameState& state) const = 0;
  virtual void do_next(GameState& state, const Action& action) const = 0;
  virtual std::vector<ActionPtr> do_compute_actions(const GameState& state) const = 0;
};

}  // namespace tag
