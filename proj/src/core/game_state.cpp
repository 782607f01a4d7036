#include "tag/core/game_state.hpp"

#include <algorithm>

#include "tag/core/errors.hpp"

namespace tag {

GameState::GameState(std::shared_ptr<const GameParameters> params, int n_players, TurnOrder turn_order,
                     bool partial_observable)
    : turn_order_(std::move(turn_order)),
      params_(std::move(params)),
      n_players_(n_players),
      partial_observable_(partial_observable),
      results_(static_cast<std::size_t>(n_players), PlayerResult::kOngoing),
      rng_(params_ ? params_->seed : 0) {
  if (n_players < 1 || n_players > kMaxPlayers) throw InvalidArgumentError("unsupported player count");
  if (!params_) throw InvalidArgumentError("game state needs parameters");
}

std::unique_ptr<GameState> GameState::copy(int player) const {
  if (player != kNoPlayer && (player < 0 || player >= n_players_)) {
    throw InvalidArgumentError("copy for player " + std::to_string(player) + " out of range");
  }
  auto out = clone();
  if (player != kNoPlayer && partial_observable_) {
    out->rng_ = rng_.split(static_cast<std::uint64_t>(player) + 1);
    out->conceal(player);
  }
  return out;
}

std::string GameState::phase_name() const {
  if (phase_ == kMainPhase) return "Main";
  if (phase_ == kPlayerReactionPhase) return "PlayerReaction";
  if (phase_ == kEndPhase) return "End";
  return "Phase" + std::to_string(phase_.value);
}

void GameState::reset() {
  registry_.clear();
  turn_order_.reset();
  phase_ = kMainPhase;
  status_ = GameStatus::kOngoing;
  std::fill(results_.begin(), results_.end(), PlayerResult::kOngoing);
  tick_ = 0;
  rng_ = Rng(params_->seed);
}

ComponentId GameState::register_component(Component component) {
  if (is_terminal()) throw RegistrationError("cannot register components in an ended game");
  return registry_.add(std::move(component));
}

ComponentId GameState::register_container(Component container, std::vector<Component> contents) {
  if (is_terminal()) throw RegistrationError("cannot register components in an ended game");
  return registry_.add_container(std::move(container), std::move(contents));
}

void GameState::end_game(PlayerResult fallback) {
  status_ = GameStatus::kEnded;
  for (auto& r : results_) {
    if (r == PlayerResult::kOngoing) r = fallback;
  }
}

void hash_component(StateHasher& h, const Component& c) {
  h.add(c.id);
  h.add(c.owner);
  h.add(static_cast<int>(c.kind()));
  std::visit(
      [&](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, Token>) {
          h.add(body.kind);
          h.add(body.position.value_or(-1));
        } else if constexpr (std::is_same_v<T, Die>) {
          h.add(body.sides());
          h.add(body.value());
        } else if constexpr (std::is_same_v<T, Card>) {
          // Card properties are immutable; identity is carried by id and name.
          h.add(c.name);
        } else if constexpr (std::is_same_v<T, Counter>) {
          h.add(body.min());
          h.add(body.max());
          h.add(body.value());
        } else if constexpr (std::is_same_v<T, Deck>) {
          h.add_all(body.contents());
        } else if constexpr (std::is_same_v<T, PartialObservableDeck>) {
          h.add_all(body.contents());
          for (std::size_t i = 0; i < body.size(); ++i) h.add(static_cast<std::uint64_t>(body.visibility(i)));
        } else if constexpr (std::is_same_v<T, Area>) {
          h.add_all(std::span<const ComponentId>(body.contents));
        } else if constexpr (std::is_same_v<T, GridBoard>) {
          h.add(body.width());
          h.add(body.height());
          for (auto v : body.cells()) h.add(static_cast<int>(v));
        } else if constexpr (std::is_same_v<T, GraphBoard>) {
          h.add_all(std::span<const ComponentId>(body.nodes));
        } else if constexpr (std::is_same_v<T, BoardNode>) {
          h.add_all(std::span<const ComponentId>(body.neighbours));
        }
      },
      c.body);
}

std::uint64_t GameState::hash() const {
  StateHasher h;
  h.add(game_name());
  h.add(static_cast<std::int64_t>(registry_.size()));
  for (const auto& c : registry_.all()) hash_component(h, c);
  h.add(turn_order_.turn_owner());
  h.add(turn_order_.current_player());
  h.add(turn_order_.turn_counter());
  h.add(turn_order_.round_counter());
  h.add(turn_order_.direction());
  h.add(phase_.value);
  h.add(static_cast<int>(status_));
  for (auto r : results_) h.add(static_cast<int>(r));
  hash_fields(h);
  return h.digest();
}

std::uint64_t GameState::full_hash() const {
  StateHasher h;
  h.add(hash());
  h.add(tick_);
  Rng probe = rng_;
  h.add(probe.next());
  h.add(probe.next());
  return h.digest();
}

bool element_visible(const Component& container, std::size_t i, int player) {
  if (container.kind() == ComponentKind::kPartialObservableDeck) {
    return container.as<PartialObservableDeck>().is_visible(i, player);
  }
  return true;
}

HiddenCount count_hidden(const GameState& state, int player) {
  HiddenCount out;
  for (const auto& c : state.registry().all()) {
    if (c.is_atomic()) ++out.atomic;
    if (!state.partial_observable() || c.kind() != ComponentKind::kPartialObservableDeck) continue;
    const auto& deck = c.as<PartialObservableDeck>();
    for (std::size_t i = 0; i < deck.size(); ++i) {
      if (!deck.is_visible(i, player) && state.registry().at(deck.at(i)).is_atomic()) ++out.hidden;
    }
  }
  return out;
}

}  // namespace tag
