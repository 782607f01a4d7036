#include <algorithm>
#include <map>
#include <vector>

#include "doctest.h"
#include "tag/agents/random_agent.hpp"
#include "tag/core/errors.hpp"
#include "tag/core/json_loader.hpp"
#include "tag/games/builtin_games.hpp"
#include "tag/games/loveletter.hpp"

using namespace tag;
using namespace tag::loveletter;

namespace {

struct Fixture {
  GameInstance inst;
  State& s;
  const loveletter::ForwardModel& fm;
  explicit Fixture(int n, std::uint64_t seed = 1)
      : inst(builtin_games().lookup("LoveLetter").create(n, *builtin_games().lookup("LoveLetter").parameters(seed), {})),
        s(dynamic_cast<State&>(*inst.state)),
        fm(dynamic_cast<const loveletter::ForwardModel&>(*inst.forward_model)) {
    fm.setup(s);
  }

  /// Returns every hand to the draw pile, then deals the requested card types.
  void arrange(const std::vector<std::vector<CardType>>& hands) {
    for (int p = 0; p < s.n_players(); ++p) {
      while (!s.hand(p).empty()) s.draw_pile().add_bottom(s.hand(p).draw(), 0);
    }
    for (std::size_t p = 0; p < hands.size(); ++p) {
      for (CardType t : hands[p]) {
        const ComponentId found = take_any(t);
        s.hand(static_cast<int>(p)).add(found, s.hand_visibility(static_cast<int>(p)));
      }
    }
    s.set_phase(kMainPhase);
  }

  ComponentId take(PartialObservableDeck& d, CardType t) {
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (s.card_type(d.at(i)) == t) return d.remove_at(i);
    }
    return kNoComponent;
  }

  ComponentId take_any(CardType t) {
    ComponentId found = take(s.draw_pile(), t);
    if (found == kNoComponent) found = take(s.reserve(), t);
    REQUIRE(found != kNoComponent);
    return found;
  }

  ComponentId held(int p, CardType t) const {
    for (ComponentId c : s.hand(p).contents()) {
      if (s.card_type(c) == t) return c;
    }
    FAIL("card not in hand");
    return kNoComponent;
  }

  void play(int actor, CardType t, int target = kNoPlayer, std::optional<CardType> guess = std::nullopt) {
    REQUIRE(s.current_player() == actor);
    fm.next(s, PlayCard(s.hand_id(actor), s.discard_id(actor), held(actor, t), t, actor, target, guess));
  }
};

std::vector<ComponentId> all_located(const State& s) {
  std::vector<ComponentId> out;
  auto take = [&](std::span<const ComponentId> ids) { out.insert(out.end(), ids.begin(), ids.end()); };
  for (int p = 0; p < s.n_players(); ++p) {
    take(s.hand(p).contents());
    take(s.discard(p).contents());
  }
  take(s.draw_pile().contents());
  take(s.reserve().contents());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("four-player setup deals one card each and leaves eleven") {
  Fixture f(4);
  for (int p = 0; p < 4; ++p) CHECK(f.s.hand(p).size() == 1);
  CHECK(f.s.reserve().size() == 1);
  CHECK(f.s.draw_pile().size() == 11);
  CHECK(f.s.cards().size() == 16);
  for (int p = 0; p < 4; ++p) CHECK(f.s.affection_tokens(p) == 0);
  CHECK(f.s.phase() == kDrawPhase);
}

TEST_CASE("two-player setup adds three face-up reserve cards") {
  Fixture f(2);
  REQUIRE(f.s.reserve().size() == 4);
  int face_up = 0;
  for (std::size_t i = 0; i < 4; ++i) face_up += f.s.reserve().visibility(i) == visible_to_all(2) ? 1 : 0;
  CHECK(face_up == 3);
  CHECK(f.s.draw_pile().size() == 10);
}

TEST_CASE("hands are visible to their owner only") {
  Fixture f(3);
  for (int p = 0; p < 3; ++p) {
    for (int v = 0; v < 3; ++v) CHECK(f.s.hand(p).is_visible(0, v) == (p == v));
  }
}

TEST_CASE("draw phase offers exactly one draw") {
  Fixture f(3);
  const auto actions = f.fm.compute_available_actions(f.s);
  REQUIRE(actions.size() == 1);
  CHECK(dynamic_cast<const DrawCard*>(actions[0].get()) != nullptr);
  f.fm.next(f.s, *actions[0]);
  CHECK(f.s.phase() == kMainPhase);
  CHECK(f.s.hand(0).size() == 2);
  CHECK(f.s.current_player() == 0);
}

TEST_CASE("main phase action counts follow the card loops") {
  Fixture f(4);
  f.arrange({{CardType::kGuard, CardType::kPriest}, {CardType::kGuard}, {CardType::kBaron}, {CardType::kKing}});
  CHECK(f.fm.compute_available_actions(f.s).size() == 3 * 8 + 3);
  f.arrange({{CardType::kHandmaid, CardType::kPrincess}, {CardType::kGuard}, {CardType::kBaron}, {CardType::kKing}});
  CHECK(f.fm.compute_available_actions(f.s).size() == 2);
  f.arrange({{CardType::kGuard, CardType::kPrince}, {CardType::kGuard}, {CardType::kBaron}, {CardType::kKing}});
  f.s.eliminate(2);
  CHECK(f.fm.compute_available_actions(f.s).size() == 2 * 8 + 2);
}

TEST_CASE("baron knocks out the lower card") {
  Fixture f(4);
  f.arrange({{CardType::kBaron, CardType::kPrince}, {CardType::kPriest}, {CardType::kGuard}, {CardType::kKing}});
  f.play(0, CardType::kBaron, 1);
  CHECK(f.s.result(1) == PlayerResult::kLose);
  CHECK(f.s.hand(1).empty());
  CHECK(f.s.discard(1).size() == 1);
  CHECK(f.s.is_alive(0));
  CHECK(f.s.phase() == kDrawPhase);
  CHECK(f.s.current_player() == 2);

  Fixture g(4);
  g.arrange({{CardType::kBaron, CardType::kGuard}, {CardType::kGuard}, {CardType::kGuard}, {CardType::kKing}});
  g.play(0, CardType::kBaron, 1);
  CHECK(g.s.is_alive(0));
  CHECK(g.s.is_alive(1));
  g.arrange({{CardType::kBaron, CardType::kGuard}, {CardType::kKing}, {CardType::kGuard}, {CardType::kPriest}});
  g.s.turn_order().set_turn_owner(0);
  g.play(0, CardType::kBaron, 1);
  CHECK_FALSE(g.s.is_alive(0));
}

TEST_CASE("guard eliminates on a correct guess unless the target is protected") {
  Fixture f(4);
  f.arrange({{CardType::kGuard, CardType::kGuard}, {CardType::kPriest}, {CardType::kHandmaid}, {CardType::kKing}});
  f.s.set_protected(1, true);
  f.play(0, CardType::kGuard, 1, CardType::kPriest);
  CHECK(f.s.is_alive(1));
  f.arrange({{CardType::kGuard, CardType::kGuard}, {CardType::kPriest}, {CardType::kHandmaid}, {CardType::kKing}});
  f.s.set_protected(1, false);
  f.s.turn_order().set_turn_owner(0);
  f.play(0, CardType::kGuard, 1, CardType::kBaron);
  CHECK(f.s.is_alive(1));
  f.arrange({{CardType::kGuard, CardType::kGuard}, {CardType::kPriest}, {CardType::kHandmaid}, {CardType::kKing}});
  f.s.turn_order().set_turn_owner(0);
  f.play(0, CardType::kGuard, 1, CardType::kPriest);
  CHECK_FALSE(f.s.is_alive(1));
}

TEST_CASE("priest reveals the target hand to the actor only") {
  Fixture f(3);
  f.arrange({{CardType::kPriest, CardType::kGuard}, {CardType::kKing}, {CardType::kBaron}});
  f.play(0, CardType::kPriest, 1);
  CHECK(f.s.hand(1).is_visible(0, 0));
  CHECK(f.s.hand(1).is_visible(0, 1));
  CHECK_FALSE(f.s.hand(1).is_visible(0, 2));
}

TEST_CASE("handmaid protects until the next draw") {
  Fixture f(2);
  f.arrange({{CardType::kHandmaid, CardType::kGuard}, {CardType::kKing}});
  f.play(0, CardType::kHandmaid);
  CHECK(f.s.is_protected(0));
  f.fm.next(f.s, DrawCard(f.s.draw_pile_id(), f.s.hand_id(1)));
  f.play(1, CardType::kKing, 0);  // no effect on a protected player
  CHECK(f.s.hand(1).size() == 1);
  CHECK(f.s.card_type(f.s.hand(0).top()) == CardType::kGuard);
  CHECK(f.s.is_protected(0));
  f.fm.next(f.s, DrawCard(f.s.draw_pile_id(), f.s.hand_id(0)));
  CHECK_FALSE(f.s.is_protected(0));
}

TEST_CASE("prince makes the target discard and redraw") {
  Fixture f(3);
  f.arrange({{CardType::kPrince, CardType::kGuard}, {CardType::kBaron}, {CardType::kKing}});
  const std::size_t pile = f.s.draw_pile().size();
  f.play(0, CardType::kPrince, 1);
  CHECK(f.s.is_alive(1));
  CHECK(f.s.hand(1).size() == 1);
  CHECK(f.s.card_type(f.s.discard(1).top()) == CardType::kBaron);
  CHECK(f.s.draw_pile().size() == pile - 1);
}

TEST_CASE("prince on a held princess eliminates, including on oneself") {
  Fixture f(3);
  f.arrange({{CardType::kPrince, CardType::kPrincess}, {CardType::kBaron}, {CardType::kKing}});
  f.play(0, CardType::kPrince, 0);
  CHECK_FALSE(f.s.is_alive(0));
  CHECK(f.s.hand(0).empty());
  CHECK(f.s.discard(0).size() == 2);
}

TEST_CASE("prince with an empty draw pile hands over the hidden reserve card") {
  Fixture f(3);
  f.arrange({{CardType::kPrince, CardType::kGuard}, {CardType::kBaron}, {CardType::kKing}});
  // Park the pile in player 2's discard so conservation still holds.
  while (!f.s.draw_pile().empty()) f.s.discard(2).add(f.s.draw_pile().draw());
  if (f.s.reserve().empty()) f.s.reserve().add(f.s.discard(2).draw(), 0);
  const ComponentId reserved = f.s.reserve().top();
  // Applied without the forward model: the round would end on the empty pile.
  PlayCard(f.s.hand_id(0), f.s.discard_id(0), f.held(0, CardType::kPrince), CardType::kPrince, 0, 1).execute(f.s);
  CHECK(f.s.hand(1).top() == reserved);
  CHECK(f.s.reserve().empty());
}

TEST_CASE("king swaps hands and both players see both cards") {
  Fixture f(3);
  f.arrange({{CardType::kKing, CardType::kGuard}, {CardType::kPrincess}, {CardType::kBaron}});
  f.play(0, CardType::kKing, 1);
  CHECK(f.s.card_type(f.s.hand(0).top()) == CardType::kPrincess);
  CHECK(f.s.card_type(f.s.hand(1).top()) == CardType::kGuard);
  CHECK(f.s.hand(0).is_visible(0, 1));
  CHECK(f.s.hand(1).is_visible(0, 0));
  CHECK_FALSE(f.s.hand(1).is_visible(0, 2));
}

TEST_CASE("playing the princess knocks the actor out; countess does nothing") {
  Fixture f(3);
  f.arrange({{CardType::kPrincess, CardType::kCountess}, {CardType::kBaron}, {CardType::kKing}});
  f.play(0, CardType::kCountess);
  CHECK(f.s.is_alive(0));
  f.arrange({{CardType::kPrincess, CardType::kGuard}, {CardType::kBaron}, {CardType::kKing}});
  f.s.turn_order().set_turn_owner(0);
  f.play(0, CardType::kPrincess);
  CHECK_FALSE(f.s.is_alive(0));
}

TEST_CASE("targeting an eliminated player is rejected") {
  Fixture f(3);
  f.arrange({{CardType::kBaron, CardType::kGuard}, {CardType::kKing}, {CardType::kPriest}});
  f.s.eliminate(1);
  CHECK_THROWS_AS(f.play(0, CardType::kBaron, 1), IllegalActionError);
}

TEST_CASE("round winners go by hand value then discard total") {
  Fixture f(3);
  f.arrange({{CardType::kPrincess}, {CardType::kKing}, {CardType::kGuard}});
  f.s.eliminate(2);
  CHECK(loveletter::ForwardModel::round_winners(f.s) == std::vector<int>{0});
  f.arrange({{CardType::kGuard}, {CardType::kGuard}, {CardType::kGuard}});
  f.s.discard(1).add(f.take_any(CardType::kBaron));
  CHECK(loveletter::ForwardModel::round_winners(f.s) == std::vector<int>{1});
  f.s.discard(0).add(f.take_any(CardType::kBaron));
  CHECK(loveletter::ForwardModel::round_winners(f.s) == std::vector<int>{0, 1});
}

TEST_CASE("last survivor wins the round and leads the next one") {
  Fixture f(3);
  f.arrange({{CardType::kBaron, CardType::kPrincess}, {CardType::kGuard}, {CardType::kPriest}});
  f.s.eliminate(2);
  f.play(0, CardType::kBaron, 1);
  CHECK(f.s.affection_tokens(0) == 1);
  CHECK(f.s.turn_order().round_counter() == 1);
  CHECK(f.s.current_player() == 0);
  CHECK(f.s.phase() == kDrawPhase);
  for (int p = 0; p < 3; ++p) {
    CHECK(f.s.is_alive(p));
    CHECK(f.s.discard(p).empty());
    CHECK(f.s.hand(p).size() == 1);
  }
}

TEST_CASE("reaching the token threshold ends the game") {
  Fixture f(2);
  f.s.set_affection_tokens(0, 4);
  f.s.set_affection_tokens(1, 4);
  f.arrange({{CardType::kGuard, CardType::kPriest}, {CardType::kPrincess}});
  f.play(0, CardType::kGuard, 1, CardType::kPrincess);
  CHECK(f.s.is_terminal());
  CHECK(f.s.result(0) == PlayerResult::kWin);
  CHECK(f.s.result(1) == PlayerResult::kLose);
}

TEST_CASE("heuristic mixes hand value and tokens") {
  Fixture f(3);
  f.arrange({{CardType::kPrincess}, {CardType::kGuard}, {CardType::kKing}});
  CHECK(f.s.score(0) == doctest::Approx(0.3 * 8.0 / 9.0));
  f.s.set_affection_tokens(1, 2);
  CHECK(f.s.score(1) == doctest::Approx(0.3 * 1.0 / 9.0 + 0.7 * 2.0 / 5.0));
  f.s.eliminate(2);
  CHECK(f.s.score(2) == -1.0);
}

TEST_CASE("random play conserves cards and bounds round length") {
  for (int n = 2; n <= 4; ++n) {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      Fixture f(n, seed);
      const auto expected = all_located(f.s);
      REQUIRE(expected.size() == 16);
      Rng rng(seed);
      int round = 0;
      int main_actions = 0;
      while (!f.s.is_terminal()) {
        const auto actions = f.fm.compute_available_actions(f.s);
        const bool main = f.s.phase() == kMainPhase;
        f.fm.next(f.s, *actions[rng.uniform(actions.size())]);
        if (f.s.turn_order().round_counter() != round) {
          round = f.s.turn_order().round_counter();
          main_actions = 0;
        } else if (main) {
          ++main_actions;
        }
        REQUIRE(main_actions <= 16);
        REQUIRE(all_located(f.s) == expected);
        for (int p = 0; p < n; ++p) {
          if (!f.s.is_terminal() && !f.s.is_alive(p)) REQUIRE(f.s.hand(p).empty());
        }
      }
    }
  }
}

TEST_CASE("parameters load from the bundled component file") {
  const Params p = Params::load(data_dir() / "loveletter" / "params.json");
  CHECK(p.deck_size() == 16);
  CHECK(p.card_counts.at(CardType::kGuard) == 5);
  CHECK(p.tokens_to_win(2) == 5);
  CHECK(p.tokens_to_win(4) == 5);
  Params q;
  q.n_tokens_win = {7, 7, 5, 4};
  q.countess_play_threshold = 0.25;
  Params r;
  r.from_json(q.to_json());
  CHECK(r.tokens_to_win(3) == 5);
  CHECK(r.tokens_to_win(4) == 4);
  CHECK(r.countess_play_threshold == 0.25);
  r.n_cards_per_player = 0;
  CHECK_THROWS_AS(r.validate(), InvalidArgumentError);
}

TEST_CASE("player count outside 2..4 is rejected") {
  const auto& d = builtin_games().lookup("LoveLetter");
  CHECK_THROWS_AS(d.create(1, *d.parameters(0), {}), InvalidArgumentError);
  CHECK_THROWS_AS(d.create(5, *d.parameters(0), {}), InvalidArgumentError);
}
