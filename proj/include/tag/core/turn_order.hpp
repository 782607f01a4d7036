#pragma once

#include <deque>
#include <span>

#include "tag/core/types.hpp"

namespace tag {

/// Decides who acts next. Players whose result is not Ongoing are skipped.
///
/// With `auto_rounds` a round ends once every live player has taken a turn;
/// otherwise the game ends rounds itself through end_round(). Queued reactions
/// are served before the base order resumes.
class TurnOrder {
 public:
  explicit TurnOrder(int n_players = 0, bool auto_rounds = true);

  int n_players() const { return n_players_; }
  int current_player() const { return reactions_.empty() ? turn_owner_ : reactions_.front(); }
  int turn_owner() const { return turn_owner_; }
  int first_player() const { return first_player_; }
  int turn_counter() const { return turn_counter_; }
  int round_counter() const { return round_counter_; }
  int direction() const { return direction_; }
  bool auto_rounds() const { return auto_rounds_; }

  /// Next live player after `from` in the current direction (may be `from` itself).
  int next_player(int from, std::span<const PlayerResult> results) const;

  void end_player_turn(std::span<const PlayerResult> results);
  void end_round();
  void set_turn_owner(int player);
  void set_first_player(int player);
  void reverse() { direction_ = -direction_; }
  /// Passes the turn over the next live player without counting a turn.
  void skip_next(std::span<const PlayerResult> results);

  void add_reaction(int player);
  bool has_pending_reaction() const { return !reactions_.empty(); }

  void reset(int first_player = 0);

  bool operator==(const TurnOrder&) const = default;

 private:
  int n_players_;
  bool auto_rounds_;
  int turn_owner_ = 0;
  int first_player_ = 0;
  int turn_counter_ = 0;
  int round_counter_ = 0;
  int turns_in_round_ = 0;
  int direction_ = 1;
  std::deque<int> reactions_;
};

}  // namespace tag
