#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <tuple>
#include <vector>

#include "tag/core/forward_model.hpp"
#include "tag/core/game_registry.hpp"
#include "tag/core/game_state.hpp"

namespace tag::loveletter {

enum class CardType {
  kGuard = 1,
  kPriest = 2,
  kBaron = 3,
  kHandmaid = 4,
  kPrince = 5,
  kKing = 6,
  kCountess = 7,
  kPrincess = 8,
};

inline constexpr std::array<CardType, 8> kAllCardTypes = {
    CardType::kGuard, CardType::kPriest,   CardType::kBaron,    CardType::kHandmaid,
    CardType::kPrince, CardType::kKing,    CardType::kCountess, CardType::kPrincess};
inline constexpr int kMaxCardValue = 8;

constexpr int value(CardType t) { return static_cast<int>(t); }
std::string_view name(CardType t);
std::optional<CardType> parse_card_type(std::string_view s);

/// Turns start in the Draw phase and continue in Main once a card was drawn.
inline constexpr GamePhase kDrawPhase{kFirstGamePhase};

class Params final : public GameParameters {
 public:
  std::map<CardType, int> card_counts = {
      {CardType::kGuard, 5},  {CardType::kPriest, 2}, {CardType::kBaron, 2},    {CardType::kHandmaid, 2},
      {CardType::kPrince, 2}, {CardType::kKing, 1},   {CardType::kCountess, 1}, {CardType::kPrincess, 1}};
  int n_cards_per_player = 1;
  /// Extra face-up cards set aside in two-player games.
  int n_cards_visible_reserve = 3;
  /// Affection tokens needed to win, indexed by (player count - 1); the last
  /// entry covers larger tables.
  std::vector<int> n_tokens_win = {5, 5, 5, 5};
  double factor_cards = 0.3;
  double factor_affection = 0.7;
  double countess_play_threshold = 0.1;

  int deck_size() const;
  int tokens_to_win(int n_players) const;

  /// Reads card counts and token thresholds from a component file: one card
  /// entry per type (count = copies) and one `affectionTokens` counter per
  /// player count whose max is the winning threshold.
  static Params load(const std::filesystem::path& path);

  std::unique_ptr<GameParameters> clone() const override { return std::make_unique<Params>(*this); }
  nlohmann::json to_json() const override;
  void from_json(const nlohmann::json& j) override;
  void randomize(Rng& rng) override;
  void validate() const override;
};

class State final : public GameState {
 public:
  State(std::shared_ptr<const GameParameters> params, int n_players, bool partial_observable);

  std::unique_ptr<GameState> clone() const override { return std::unique_ptr<GameState>(new State(*this)); }
  std::string_view game_name() const override { return "LoveLetter"; }
  double score(int player) const override;
  std::vector<ComponentId> top_level_components() const override;
  std::string describe(int viewer) const override;
  std::string phase_name() const override;
  int hand_size(int player) const override { return static_cast<int>(hand(player).size()); }
  nlohmann::json public_info() const override;
  void reset() override;

  const Params& ll_params() const { return static_cast<const Params&>(params()); }

  ComponentId hand_id(int p) const { return hands_.at(static_cast<std::size_t>(p)); }
  ComponentId discard_id(int p) const { return discards_.at(static_cast<std::size_t>(p)); }
  ComponentId draw_pile_id() const { return draw_pile_; }
  ComponentId reserve_id() const { return reserve_; }
  const PartialObservableDeck& hand(int p) const { return get<PartialObservableDeck>(hand_id(p)); }
  PartialObservableDeck& hand(int p) { return get<PartialObservableDeck>(hand_id(p)); }
  const Deck& discard(int p) const { return get<Deck>(discard_id(p)); }
  Deck& discard(int p) { return get<Deck>(discard_id(p)); }
  const PartialObservableDeck& draw_pile() const { return get<PartialObservableDeck>(draw_pile_); }
  PartialObservableDeck& draw_pile() { return get<PartialObservableDeck>(draw_pile_); }
  const PartialObservableDeck& reserve() const { return get<PartialObservableDeck>(reserve_); }
  PartialObservableDeck& reserve() { return get<PartialObservableDeck>(reserve_); }
  const std::vector<ComponentId>& cards() const { return cards_; }

  CardType card_type(ComponentId card) const { return card_types_->at(static_cast<std::size_t>(card)); }
  bool is_protected(int p) const { return protection_.at(static_cast<std::size_t>(p)); }
  void set_protected(int p, bool v) { protection_.at(static_cast<std::size_t>(p)) = v; }
  int affection_tokens(int p) const { return tokens_.at(static_cast<std::size_t>(p)); }
  void set_affection_tokens(int p, int v) { tokens_.at(static_cast<std::size_t>(p)) = v; }
  bool is_alive(int p) const { return result(p) == PlayerResult::kOngoing; }

  /// Hand default visibility: the owner only, or everyone without partial observability.
  VisibilityMask hand_visibility(int p) const;
  /// Knocks a player out of the round; their hand goes to their discard pile.
  void eliminate(int p);
  /// Sum of the values of the player's hand.
  int hand_value(int p) const;
  int discard_value(int p) const;

 protected:
  void conceal(int player) override;
  void hash_fields(StateHasher& h) const override;

 private:
  friend class ForwardModel;
  State(const State&) = default;

  std::vector<ComponentId> hands_;
  std::vector<ComponentId> discards_;
  ComponentId draw_pile_ = kNoComponent;
  ComponentId reserve_ = kNoComponent;
  std::vector<ComponentId> cards_;
  std::shared_ptr<const std::vector<CardType>> card_types_;
  std::vector<bool> protection_;
  std::vector<int> tokens_;
};

/// Moves the top of the draw pile into the player's hand and lifts their protection.
class DrawCard final : public ActionBase<DrawCard> {
 public:
  DrawCard(ComponentId from, ComponentId to) : from_(from), to_(to) {}

  void execute(GameState& state) const override;
  std::string to_string() const override { return "Draw a card"; }

  auto key() const { return std::tuple(from_, to_); }

 private:
  ComponentId from_;
  ComponentId to_;
};

/// Plays one card from hand onto the player's discard pile and resolves its effect.
class PlayCard final : public ActionBase<PlayCard> {
 public:
  PlayCard(ComponentId hand, ComponentId discard, ComponentId card, CardType type, int player,
           int target = kNoPlayer, std::optional<CardType> guess = std::nullopt)
      : hand_(hand), discard_(discard), card_(card), type_(type), player_(player), target_(target), guess_(guess) {}

  void execute(GameState& state) const override;
  std::string to_string() const override;

  ComponentId card() const { return card_; }
  CardType type() const { return type_; }
  int player() const { return player_; }
  int target() const { return target_; }
  std::optional<CardType> guess() const { return guess_; }

  auto key() const { return std::tuple(hand_, discard_, card_, type_, player_, target_, guess_ ? value(*guess_) : 0); }

 private:
  ComponentId hand_;
  ComponentId discard_;
  ComponentId card_;
  CardType type_;
  int player_;
  int target_;
  std::optional<CardType> guess_;
};

class ForwardModel final : public tag::ForwardModel {
 public:
  std::unique_ptr<tag::ForwardModel> copy() const override { return std::make_unique<ForwardModel>(); }

  /// Rebuilds and deals a round. With previous winners, one of them starts.
  void setup_round(State& state, const std::vector<int>* previous_winners) const;
  /// Ends the round when at most one player is left or the draw pile is
  /// empty: awards tokens, ends the game or starts the next round.
  void check_round_end(State& state) const;
  /// Survivors with the best hand; ties go to the higher discard total and are shared after that.
  static std::vector<int> round_winners(const State& state);

 protected:
  void do_setup(GameState& state) const override;
  void do_next(GameState& state, const Action& action) const override;
  std::vector<ActionPtr> do_compute_actions(const GameState& state) const override;
};

GameDescriptor descriptor();

}  // namespace tag::loveletter
