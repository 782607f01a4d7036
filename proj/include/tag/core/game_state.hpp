#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "tag/core/component.hpp"
#include "tag/core/hashing.hpp"
#include "tag/core/parameters.hpp"
#include "tag/core/registry.hpp"
#include "tag/core/rng.hpp"
#include "tag/core/turn_order.hpp"
#include "tag/core/types.hpp"

namespace tag {

/// Everything about one moment of a game: the component registry plus turn
/// order, phase and statuses. Game-specific fields hold component IDs into the
/// registry, so copying a state never shares mutable storage.
///
/// The state owns its random stream; forward models draw from it, which keeps
/// `next` deterministic given the state and the action.
class GameState {
 public:
  GameState(std::shared_ptr<const GameParameters> params, int n_players, TurnOrder turn_order,
            bool partial_observable);
  virtual ~GameState() = default;

  GameState& operator=(const GameState&) = delete;

  /// Exact deep copy.
  virtual std::unique_ptr<GameState> clone() const = 0;

  /// Deep copy as seen by `player`. With partial observability on and a real
  /// player, components hidden from that player are resampled and the random
  /// stream is re-derived. kNoPlayer gives an exact copy.
  std::unique_ptr<GameState> copy(int player = kNoPlayer) const;

  virtual std::string_view game_name() const = 0;

  /// Heuristic value of this state for `player`; larger is better.
  virtual double score(int player) const = 0;

  /// Components referenced directly by the game's own fields. Nested contents
  /// are reachable through those containers.
  virtual std::vector<ComponentId> top_level_components() const = 0;

  /// Human readable state as visible to `viewer` (kNoPlayer for public view).
  virtual std::string describe(int viewer) const = 0;

  virtual std::string phase_name() const;

  /// Cards in the player's hand, or -1 for games without hands.
  virtual int hand_size(int /*player*/) const { return -1; }

  /// Game fields every player may see, for display (e.g. scores, colours).
  virtual nlohmann::json public_info() const { return nlohmann::json::object(); }

  /// Returns to the pre-setup state.
  virtual void reset();

  int n_players() const { return n_players_; }
  int current_player() const { return turn_order_.current_player(); }
  bool partial_observable() const { return partial_observable_; }
  const GameParameters& params() const { return *params_; }
  std::shared_ptr<const GameParameters> shared_params() const { return params_; }

  ComponentRegistry& registry() { return registry_; }
  const ComponentRegistry& registry() const { return registry_; }
  template <class T>
  T& get(ComponentId id) { return registry_.get<T>(id); }
  template <class T>
  const T& get(ComponentId id) const { return registry_.get<T>(id); }

  /// Throws once the game has ended.
  ComponentId register_component(Component component);
  ComponentId register_container(Component container, std::vector<Component> contents);

  TurnOrder& turn_order() { return turn_order_; }
  const TurnOrder& turn_order() const { return turn_order_; }
  GamePhase phase() const { return phase_; }
  void set_phase(GamePhase phase) { phase_ = phase; }

  GameStatus status() const { return status_; }
  bool is_terminal() const { return status_ == GameStatus::kEnded; }
  std::span<const PlayerResult> results() const { return results_; }
  PlayerResult result(int player) const { return results_.at(static_cast<std::size_t>(player)); }
  void set_result(int player, PlayerResult result) { results_.at(static_cast<std::size_t>(player)) = result; }
  /// Marks the game ended; every Ongoing result becomes `fallback`.
  void end_game(PlayerResult fallback = PlayerResult::kLose);

  int tick() const { return tick_; }
  void advance_tick() { ++tick_; }
  Rng& rng() { return rng_; }
  const Rng& rng() const { return rng_; }
  void reseed(std::uint64_t seed) { rng_ = Rng(seed); }

  /// Hash of the registry, turn order, phase, statuses and game fields. The
  /// tick and the random stream are excluded.
  std::uint64_t hash() const;
  /// hash() plus tick and random stream: equal only for bit-identical states.
  std::uint64_t full_hash() const;

 protected:
  GameState(const GameState&) = default;

  /// Resamples components hidden from `player`. Called on copies only.
  virtual void conceal(int /*player*/) {}
  virtual void hash_fields(StateHasher& /*h*/) const {}

  ComponentRegistry registry_;
  TurnOrder turn_order_;

 private:
  std::shared_ptr<const GameParameters> params_;
  int n_players_;
  bool partial_observable_;
  GamePhase phase_ = kMainPhase;
  GameStatus status_ = GameStatus::kOngoing;
  std::vector<PlayerResult> results_;
  int tick_ = 0;
  Rng rng_;
};

void hash_component(StateHasher& h, const Component& c);

/// True when `player` can see the i-th element of a container. Only partially
/// observable decks hide anything.
bool element_visible(const Component& container, std::size_t i, int player);

/// Number of atomic components, and how many of them `player` cannot see.
struct HiddenCount {
  int atomic = 0;
  int hidden = 0;
};
HiddenCount count_hidden(const GameState& state, int player);

}  // namespace tag
