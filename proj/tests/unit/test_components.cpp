#include <algorithm>
#include <array>
#include <set>

#include "doctest.h"
#include "tag/core/component.hpp"
#include "tag/core/conceal.hpp"
#include "tag/core/errors.hpp"
#include "tag/core/registry.hpp"

using namespace tag;

TEST_CASE("deck: top is index 0 and add puts on top") {
  Deck d;
  d.add(1);
  d.add(2);
  d.add_bottom(3);
  CHECK(d.top() == 2);
  CHECK(d.at(2) == 3);
  CHECK_THROWS_AS(d.add(1), RegistrationError);
  CHECK(d.draw() == 2);
  CHECK(d.size() == 2);
  CHECK(d.remove(3));
  CHECK_FALSE(d.remove(3));
  d.clear();
  CHECK_THROWS_AS(d.draw("pile"), EmptyDeckError);
}

TEST_CASE("deck shuffle by seed is reproducible and a permutation") {
  Deck a, b;
  for (int i = 0; i < 20; ++i) {
    a.add(i);
    b.add(i);
  }
  a.shuffle(std::uint64_t{11});
  b.shuffle(std::uint64_t{11});
  CHECK(a == b);
  std::vector<ComponentId> sorted(a.contents().begin(), a.contents().end());
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 20; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);
}

TEST_CASE("partial observable deck tracks visibility per element") {
  PartialObservableDeck d(3, visible_to(0));
  d.add(5);
  d.add(6, visible_to_all(3));
  CHECK(d.is_visible(0, 0));
  CHECK(d.is_visible(0, 2));
  CHECK(d.is_visible(1, 0));
  CHECK_FALSE(d.is_visible(1, 1));
  d.set_visibility_all(1, true);
  CHECK(d.is_visible(1, 1));
  d.set_visibility(0, 2, false);
  CHECK_FALSE(d.is_visible(0, 2));
  CHECK(d.draw() == 6);
  CHECK(d.size() == 1);
  CHECK(d.visibility(0) == (visible_to(0) | visible_to(1)));
}

TEST_CASE("counter clamps and reports clamping") {
  Counter c(0, 5, 2);
  CHECK_FALSE(c.change(3));
  CHECK(c.is_maximum());
  CHECK(c.change(1));
  CHECK(c.value() == 5);
  CHECK(c.set(-4));
  CHECK(c.is_minimum());
}

TEST_CASE("die rejects out-of-range values and rolls within sides") {
  CHECK_THROWS_AS(Die(6, 7), InvalidArgumentError);
  Die d(4);
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    const int v = d.roll(rng);
    CHECK(v >= 1);
    CHECK(v <= 4);
  }
}

TEST_CASE("registry assigns dense ids and registers contents first") {
  ComponentRegistry reg;
  Component token{kNoComponent, kNoPlayer, "t", Token{"meeple", 3}};
  CHECK(reg.add(token) == 0);
  std::vector<Component> cards;
  for (int i = 0; i < 3; ++i) cards.push_back({kNoComponent, kNoPlayer, "c" + std::to_string(i), Card()});
  const ComponentId deck = reg.add_container({kNoComponent, kNoPlayer, "deck", Deck()}, cards);
  CHECK(deck == 4);
  const auto& d = reg.get<Deck>(deck);
  CHECK(d.size() == 3);
  CHECK(reg.at(d.top()).name == "c0");
  Component already = reg.at(0);
  CHECK_THROWS_AS(reg.add(already), RegistrationError);
  CHECK(reg.at(1).is_atomic());
  CHECK_FALSE(reg.at(deck).is_atomic());
}

TEST_CASE("conceal_and_redraw keeps visible slots and permutes the hidden pool") {
  ComponentRegistry reg;
  std::vector<Component> cards;
  for (int i = 0; i < 6; ++i) cards.push_back({kNoComponent, kNoPlayer, "c", Card()});
  const ComponentId a = reg.add_container({kNoComponent, kNoPlayer, "a", PartialObservableDeck(2, visible_to(1))}, {cards.begin(), cards.begin() + 3});
  const ComponentId b = reg.add_container({kNoComponent, kNoPlayer, "b", PartialObservableDeck(2, 0)}, {cards.begin() + 3, cards.end()});
  auto& deck_a = reg.get<PartialObservableDeck>(a);
  deck_a.set_visibility(1, 0, true);  // player 0 knows the middle card of `a`
  const ComponentId known = deck_a.at(1);

  std::multiset<ComponentId> before;
  for (auto id : {a, b}) {
    const auto& d = reg.get<PartialObservableDeck>(id);
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (!d.is_visible(i, 0)) before.insert(d.at(i));
    }
  }
  bool moved = false;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ComponentRegistry copy = reg;
    Rng rng(seed);
    const std::array<ComponentId, 2> decks{a, b};
    conceal_and_redraw(copy, decks, 0, rng);
    CHECK(copy.get<PartialObservableDeck>(a).at(1) == known);
    std::multiset<ComponentId> after;
    for (auto id : {a, b}) {
      const auto& d = copy.get<PartialObservableDeck>(id);
      CHECK(d.size() == 3);
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (!d.is_visible(i, 0)) after.insert(d.at(i));
      }
    }
    CHECK(after == before);
    moved = moved || !(copy == reg);
  }
  CHECK(moved);
}
