#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "tag/core/errors.hpp"
#include "tag/core/json_loader.hpp"
#include "tag/games/builtin_games.hpp"
#include "tag/games/uno.hpp"

using namespace tag;
using namespace tag::uno;

namespace {

UnoCard num(Color c, int n) { return {c, Kind::kNumber, n}; }
UnoCard act(Color c, Kind k) { return {c, k, 0}; }
UnoCard wild(Kind k = Kind::kWild) { return {Color::kWild, k, 0}; }

struct Fixture {
  GameInstance inst;
  State& s;
  const uno::ForwardModel& fm;
  explicit Fixture(int n, std::uint64_t seed = 1, int points_to_win = 500)
      : inst([&] {
          const auto& d = builtin_games().lookup("Uno");
          auto params = d.parameters(seed);
          static_cast<Params&>(*params).points_to_win = points_to_win;
          return d.create(n, *params, {});
        }()),
        s(dynamic_cast<State&>(*inst.state)),
        fm(dynamic_cast<const uno::ForwardModel&>(*inst.forward_model)) {
    fm.setup(s);
  }

  ComponentId take(const UnoCard& want) {
    auto& pile = s.draw_pile();
    for (std::size_t i = 0; i < pile.size(); ++i) {
      if (s.card(pile.at(i)) == want) return pile.remove_at(i);
    }
    FAIL("card not in draw pile: " << want.label());
    return kNoComponent;
  }

  /// Collects every card into the draw pile, then lays out the given discard top and hands.
  void arrange(const UnoCard& top, const std::vector<std::vector<UnoCard>>& hands) {
    for (int p = 0; p < s.n_players(); ++p) {
      while (!s.hand(p).empty()) s.draw_pile().add_bottom(s.hand(p).draw(), 0);
    }
    while (!s.discard_pile().empty()) s.draw_pile().add_bottom(s.discard_pile().draw(), 0);
    s.discard_pile().add(take(top));
    s.set_current_color(top.color);
    for (std::size_t p = 0; p < hands.size(); ++p) {
      for (const auto& c : hands[p]) s.hand(static_cast<int>(p)).add(take(c), s.hand_visibility(static_cast<int>(p)));
    }
  }

  ComponentId held(int p, const UnoCard& c) const {
    for (ComponentId id : s.hand(p).contents()) {
      if (s.card(id) == c) return id;
    }
    FAIL("card not held: " << c.label());
    return kNoComponent;
  }

  void play(int p, const UnoCard& c, std::optional<Color> chosen = std::nullopt) {
    REQUIRE(s.current_player() == p);
    fm.next(s, PlayCard(s.hand_id(p), held(p, c), c, chosen));
  }

  /// Plays the first offered action `turns` times and records who acted.
  std::vector<int> owners(int turns) {
    std::vector<int> out;
    for (int i = 0; i < turns; ++i) {
      out.push_back(s.current_player());
      fm.next(s, *fm.compute_available_actions(s).front());
    }
    return out;
  }
};

std::size_t located(const State& s) {
  std::vector<ComponentId> all;
  for (int p = 0; p < s.n_players(); ++p) {
    all.insert(all.end(), s.hand(p).contents().begin(), s.hand(p).contents().end());
  }
  all.insert(all.end(), s.draw_pile().contents().begin(), s.draw_pile().contents().end());
  all.insert(all.end(), s.discard_pile().contents().begin(), s.discard_pile().contents().end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all.size();
}

}  // namespace

TEST_CASE("bundled deck has the standard composition") {
  const auto deck = load_deck("uno/deck.json");
  REQUIRE(deck->size() == 108);
  std::map<Kind, int> kinds;
  int zeros = 0;
  for (const auto& c : *deck) {
    ++kinds[c.kind];
    zeros += c.kind == Kind::kNumber && c.number == 0 ? 1 : 0;
  }
  CHECK(kinds[Kind::kNumber] == 76);
  CHECK(zeros == 4);
  CHECK(kinds[Kind::kSkip] == 8);
  CHECK(kinds[Kind::kReverse] == 8);
  CHECK(kinds[Kind::kDrawTwo] == 8);
  CHECK(kinds[Kind::kWild] == 4);
  CHECK(kinds[Kind::kWildDrawFour] == 4);
  CHECK_THROWS_AS(load_deck("uno/missing.json"), NotFoundError);
}

TEST_CASE("card points follow face, action and wild values") {
  CHECK(num(Color::kBlue, 7).points() == 7);
  CHECK(act(Color::kRed, Kind::kSkip).points() == 20);
  CHECK(act(Color::kRed, Kind::kDrawTwo).points() == 20);
  CHECK(wild(Kind::kWildDrawFour).points() == 50);
}

TEST_CASE("four-player setup deals seven each and flips a number") {
  Fixture f(4);
  for (int p = 0; p < 4; ++p) CHECK(f.s.hand(p).size() == 7);
  CHECK(f.s.discard_pile().size() == 1);
  CHECK(f.s.draw_pile().size() == 79);
  CHECK(f.s.top_discard().kind == Kind::kNumber);
  CHECK(f.s.current_color() == f.s.top_discard().color);
  CHECK(f.s.turn_order().direction() == 1);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Fixture g(3, seed);
    CHECK(g.s.top_discard().kind == Kind::kNumber);
  }
}

TEST_CASE("playable cards match colour, number or kind; wilds choose a colour") {
  Fixture f(2);
  f.arrange(num(Color::kRed, 5), {{num(Color::kRed, 7), num(Color::kBlue, 5), num(Color::kBlue, 9), wild()}, {}});
  const auto actions = f.fm.compute_available_actions(f.s);
  CHECK(actions.size() == 2 + 4);
  std::set<ComponentId> cards;
  for (const auto& a : actions) cards.insert(dynamic_cast<const PlayCard&>(*a).card());
  CHECK(cards.size() == 3);

  f.arrange(act(Color::kGreen, Kind::kSkip), {{act(Color::kBlue, Kind::kSkip), num(Color::kYellow, 3)}, {}});
  CHECK(f.fm.compute_available_actions(f.s).size() == 1);
}

TEST_CASE("without a playable card the only action is to draw") {
  Fixture f(2);
  f.arrange(num(Color::kRed, 5), {{num(Color::kBlue, 1), num(Color::kGreen, 2)}, {num(Color::kRed, 1)}});
  const auto actions = f.fm.compute_available_actions(f.s);
  REQUIRE(actions.size() == 1);
  const std::size_t pile = f.s.draw_pile().size();
  f.fm.next(f.s, *actions[0]);
  CHECK(f.s.hand(0).size() == 3);
  CHECK(f.s.draw_pile().size() == pile - 1);
  CHECK(f.s.current_player() == 1);
}

TEST_CASE("wild sets the chosen colour") {
  Fixture f(3);
  f.arrange(num(Color::kRed, 5), {{wild(), num(Color::kRed, 1)}, {num(Color::kRed, 2)}, {num(Color::kRed, 3)}});
  f.play(0, wild(), Color::kYellow);
  CHECK(f.s.current_color() == Color::kYellow);
  CHECK(f.s.current_player() == 1);
}

TEST_CASE("reverse flips the order with three players") {
  Fixture f(3);
  const auto r = [](int n) { return num(Color::kRed, n); };
  f.arrange(r(5), {{act(Color::kRed, Kind::kReverse), r(1), r(2)}, {r(3), r(4), r(6)}, {r(7), r(8)}});
  f.play(0, act(Color::kRed, Kind::kReverse));
  CHECK(f.s.turn_order().direction() == -1);
  CHECK(f.owners(3) == std::vector<int>{2, 1, 0});
}

TEST_CASE("reverse acts as skip with two players") {
  Fixture f(2);
  f.arrange(num(Color::kRed, 5), {{act(Color::kRed, Kind::kReverse), num(Color::kRed, 1)}, {num(Color::kRed, 2)}});
  f.play(0, act(Color::kRed, Kind::kReverse));
  CHECK(f.s.current_player() == 0);
}

TEST_CASE("skip passes over the next player") {
  Fixture f(3);
  f.arrange(num(Color::kRed, 5), {{act(Color::kRed, Kind::kSkip), num(Color::kRed, 1)},
                                  {num(Color::kRed, 2)},
                                  {num(Color::kRed, 3)}});
  f.play(0, act(Color::kRed, Kind::kSkip));
  CHECK(f.s.current_player() == 2);
}

TEST_CASE("draw two feeds the victim and skips them") {
  Fixture f(3);
  f.arrange(num(Color::kRed, 5), {{act(Color::kRed, Kind::kDrawTwo), num(Color::kRed, 1)},
                                  {num(Color::kRed, 2)},
                                  {num(Color::kRed, 3)}});
  f.play(0, act(Color::kRed, Kind::kDrawTwo));
  CHECK(f.s.hand(1).size() == 3);
  CHECK(f.s.current_player() == 2);
}

TEST_CASE("wild draw four feeds four and sets the colour") {
  Fixture f(3);
  f.arrange(num(Color::kRed, 5), {{wild(Kind::kWildDrawFour), num(Color::kRed, 1)},
                                  {num(Color::kRed, 2)},
                                  {num(Color::kRed, 3)}});
  f.play(0, wild(Kind::kWildDrawFour), Color::kGreen);
  CHECK(f.s.hand(1).size() == 5);
  CHECK(f.s.current_color() == Color::kGreen);
  CHECK(f.s.current_player() == 2);
}

TEST_CASE("an empty draw pile is refilled from the discards minus the top") {
  Fixture f(2);
  f.arrange(num(Color::kRed, 5), {{num(Color::kBlue, 1)}, {num(Color::kBlue, 2)}});
  auto& pile = f.s.draw_pile();
  auto& discard = f.s.discard_pile();
  const ComponentId top = discard.draw();
  for (int i = 0; i < 9; ++i) discard.add(pile.draw());
  discard.add(top);
  // Park the rest of the pile in player 1's hand so the count stays exact.
  while (!pile.empty()) f.s.hand(1).add(pile.draw(), f.s.hand_visibility(1));
  REQUIRE(discard.size() == 10);
  f.s.recycle_discards();
  CHECK(pile.size() == 9);
  CHECK(discard.size() == 1);
  CHECK(discard.top() == top);

  while (!pile.empty()) discard.add_bottom(pile.draw());
  CHECK(f.s.draw_cards(0, 1) == 1);
  CHECK(pile.size() == 8);
  CHECK(located(f.s) == 108);
}

TEST_CASE("round winner scores the opponents' hands") {
  Fixture f(3);
  f.arrange(num(Color::kRed, 5), {{num(Color::kRed, 7)},
                                  {num(Color::kRed, 5)},
                                  {act(Color::kGreen, Kind::kSkip), num(Color::kBlue, 3)}});
  f.play(0, num(Color::kRed, 7));
  CHECK(f.s.points(0) == 28);
  CHECK(f.s.turn_order().round_counter() == 1);
  CHECK_FALSE(f.s.is_terminal());
  CHECK(f.s.current_player() == 0);
  for (int p = 0; p < 3; ++p) CHECK(f.s.hand(p).size() == 7);
  CHECK(located(f.s) == 108);
}

TEST_CASE("zero-point hands score nothing and the game goes on") {
  Fixture f(2);
  f.arrange(num(Color::kRed, 5), {{num(Color::kRed, 7)}, {num(Color::kBlue, 0)}});
  f.play(0, num(Color::kRed, 7));
  CHECK(f.s.points(0) == 0);
  CHECK(f.s.turn_order().round_counter() == 1);
}

TEST_CASE("crossing the points threshold ends the game") {
  Fixture f(2, 1, 30);
  f.arrange(num(Color::kRed, 5), {{num(Color::kRed, 7)}, {wild()}});
  f.play(0, num(Color::kRed, 7));
  CHECK(f.s.is_terminal());
  CHECK(f.s.result(0) == PlayerResult::kWin);
  CHECK(f.s.result(1) == PlayerResult::kLose);
  CHECK(f.s.score(0) == 1.0);
  CHECK(f.s.score(1) == -1.0);
}

TEST_CASE("heuristic favours smaller hands and is symmetric") {
  Fixture f(3);
  const std::vector<UnoCard> same{num(Color::kBlue, 4), act(Color::kGreen, Kind::kSkip)};
  f.arrange(num(Color::kRed, 5), {same, same, {num(Color::kYellow, 4), act(Color::kYellow, Kind::kSkip)}});
  CHECK(f.s.score(0) == f.s.score(1));
  CHECK(f.s.score(1) == f.s.score(2));
  const double before = f.s.score(0);
  f.s.draw_pile().add(f.s.hand(0).draw(), 0);
  CHECK(f.s.score(0) > before);
  // A zero still costs something.
  f.arrange(num(Color::kRed, 5), {{num(Color::kBlue, 0)}, {}, {}});
  CHECK(f.s.score(0) < f.s.score(1));
  for (double v : {f.s.score(0), f.s.score(1)}) {
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("random play conserves all 108 cards") {
  for (int n : {2, 3, 5, 10}) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      Fixture f(n, seed);
      Rng rng(seed);
      int steps = 0;
      while (!f.s.is_terminal() && steps < 3000) {
        const auto actions = f.fm.compute_available_actions(f.s);
        REQUIRE_FALSE(actions.empty());
        f.fm.next(f.s, *actions[rng.uniform(actions.size())]);
        REQUIRE(located(f.s) == 108);
        ++steps;
      }
    }
  }
}

TEST_CASE("number-only play visits seats cyclically") {
  Fixture f(4);
  const auto r = [](int n) { return num(Color::kRed, n); };
  f.arrange(r(5), {{r(0), r(1), r(2)}, {r(1), r(2), r(3)}, {r(3), r(4), r(6)}, {r(4), r(6), r(7)}});
  CHECK(f.owners(6) == std::vector<int>{0, 1, 2, 3, 0, 1});
}

TEST_CASE("uno parameters validate and round-trip") {
  Params p;
  p.points_to_win = 200;
  p.n_cards_per_player = 5;
  Params q;
  q.from_json(p.to_json());
  CHECK(q.points_to_win == 200);
  CHECK(q.n_cards_per_player == 5);
  q.points_to_win = 0;
  CHECK_THROWS_AS(q.validate(), InvalidArgumentError);
  const auto& d = builtin_games().lookup("Uno");
  CHECK_THROWS_AS(d.create(11, *d.parameters(0), {}), InvalidArgumentError);
  CHECK_THROWS_AS(d.create(1, *d.parameters(0), {}), InvalidArgumentError);
}
