#include "tag/games/builtin_games.hpp"

#include "tag/games/loveletter.hpp"
#include "tag/games/tictactoe.hpp"
#include "tag/games/uno.hpp"

namespace tag {

const GameRegistry& builtin_games() {
  static const GameRegistry registry = [] {
    GameRegistry r;
    r.add(tictactoe::descriptor());
    r.add(loveletter::descriptor());
    r.add(uno::descriptor());
    return r;
  }();
  return registry;
}

}  // namespace tag
