#include "tag/core/turn_order.hpp"

#include <algorithm>

#include "tag/core/errors.hpp"

namespace tag {

std::string_view to_string(GameStatus status) {
  return status == GameStatus::kOngoing ? "Ongoing" : "Ended";
}

std::string_view to_string(PlayerResult result) {
  switch (result) {
    case PlayerResult::kOngoing: return "Ongoing";
    case PlayerResult::kWin: return "Win";
    case PlayerResult::kLose: return "Lose";
    case PlayerResult::kDraw: return "Draw";
    case PlayerResult::kDisqualified: return "Disqualified";
  }
  return "?";
}

TurnOrder::TurnOrder(int n_players, bool auto_rounds) : n_players_(n_players), auto_rounds_(auto_rounds) {
  if (n_players < 0) throw InvalidArgumentError("negative player count");
}

int TurnOrder::next_player(int from, std::span<const PlayerResult> results) const {
  int p = from;
  for (int step = 0; step < n_players_; ++step) {
    p = ((p + direction_) % n_players_ + n_players_) % n_players_;
    if (results.empty() || results[static_cast<std::size_t>(p)] == PlayerResult::kOngoing) return p;
  }
  return from;
}

void TurnOrder::end_player_turn(std::span<const PlayerResult> results) {
  if (!reactions_.empty()) {
    reactions_.pop_front();
    return;
  }
  ++turn_counter_;
  ++turns_in_round_;
  turn_owner_ = next_player(turn_owner_, results);
  if (auto_rounds_) {
    const auto live = results.empty()
                          ? n_players_
                          : static_cast<int>(std::count(results.begin(), results.end(), PlayerResult::kOngoing));
    if (turns_in_round_ >= std::max(live, 1)) end_round();
  }
}

void TurnOrder::end_round() {
  ++round_counter_;
  turns_in_round_ = 0;
}

void TurnOrder::set_turn_owner(int player) {
  if (player < 0 || player >= n_players_) throw InvalidArgumentError("turn owner out of range");
  turn_owner_ = player;
}

void TurnOrder::set_first_player(int player) {
  set_turn_owner(player);
  first_player_ = player;
}

void TurnOrder::skip_next(std::span<const PlayerResult> results) { turn_owner_ = next_player(turn_owner_, results); }

void TurnOrder::add_reaction(int player) {
  if (player < 0 || player >= n_players_) throw InvalidArgumentError("reacting player out of range");
  reactions_.push_back(player);
}

void TurnOrder::reset(int first_player) {
  turn_owner_ = first_player;
  first_player_ = first_player;
  turn_counter_ = 0;
  round_counter_ = 0;
  turns_in_round_ = 0;
  direction_ = 1;
  reactions_.clear();
}

}  // namespace tag
