#pragma once

#include "tag/core/game_registry.hpp"

namespace tag {

/// Registry holding TicTacToe, LoveLetter and Uno. Built once, read-only after.
const GameRegistry& builtin_games();

}  // namespace tag
