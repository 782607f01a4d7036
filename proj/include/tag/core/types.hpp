#pragma once

#include <cstdint>
#include <string_view>

namespace tag {

enum class GameStatus { kOngoing, kEnded };

enum class PlayerResult { kOngoing, kWin, kLose, kDraw, kDisqualified };

std::string_view to_string(GameStatus status);
std::string_view to_string(PlayerResult result);

/// Default phases are 0..2; games extend with values from kFirstGamePhase on.
struct GamePhase {
  int value = 0;

  bool operator==(const GamePhase&) const = default;
};

inline constexpr GamePhase kMainPhase{0};
inline constexpr GamePhase kPlayerReactionPhase{1};
inline constexpr GamePhase kEndPhase{2};
inline constexpr int kFirstGamePhase = 100;

struct CoreConfig {
  bool verbose = false;
  bool partial_observable = true;
  bool disqualify_on_illegal_action = false;
};

}  // namespace tag
