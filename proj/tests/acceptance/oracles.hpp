#pragma once

#include <array>
#include <vector>

namespace oracle {

/// Cells are numbered y * 3 + x; player 0 moves first.
using Board = std::array<int, 9>;  // -1 empty, else the owner

/// Exact expectations of uniformly random play from the empty board.
/// Every move is one tick; a decision is a move with more than one option.
struct TttRandomPlay {
  double p_first = 0.0;
  double p_second = 0.0;
  double p_draw = 0.0;
  double e_ticks = 0.0;
  double e_ticks_sq = 0.0;
  double e_decisions = 0.0;
  double e_decisions_sq = 0.0;
  double e_action_sum = 0.0;  ///< expected sum of option counts over a game's ticks

  /// Mean option count over all ticks of all games.
  double pooled_action_space() const { return e_action_sum / e_ticks; }
};

TttRandomPlay ttt_random_play();

/// -1 when nobody has three in a row.
int ttt_winner(const Board& b);

struct ForcedWin {
  std::vector<int> moves;          ///< a move sequence reaching the position
  std::vector<int> winning_cells;  ///< sorted
};

/// Distinct reachable positions where the mover has an immediate win, at least
/// one move that does not win, and more than one empty cell. Sorted by board.
std::vector<ForcedWin> ttt_forced_wins();

}  // namespace oracle
