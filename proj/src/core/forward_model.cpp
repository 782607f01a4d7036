#include "tag/core/forward_model.hpp"

#include "tag/core/errors.hpp"

namespace tag {

void ForwardModel::setup(GameState& state) const {
  state.reset();
  do_setup(state);
}

void ForwardModel::next(GameState& state, const Action& action) const {
  if (state.is_terminal()) throw IllegalActionError("game already ended: " + action.to_string());
  state.advance_tick();
  do_next(state, action);
  if (state.is_terminal()) end_game(state);
}

std::vector<ActionPtr> ForwardModel::compute_available_actions(const GameState& state) const {
  if (state.is_terminal()) return {};
  return do_compute_actions(state);
}

}  // namespace tag
