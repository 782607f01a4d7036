#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "tag/core/forward_model.hpp"
#include "tag/core/game_registry.hpp"
#include "tag/core/game_state.hpp"

namespace tag::uno {

enum class Color { kRed, kGreen, kBlue, kYellow, kWild };
enum class Kind { kNumber, kSkip, kReverse, kDrawTwo, kWild, kWildDrawFour };

inline constexpr std::array<Color, 4> kPlayColors = {Color::kRed, Color::kGreen, Color::kBlue, Color::kYellow};

std::string_view name(Color c);
std::string_view name(Kind k);
std::optional<Color> parse_color(std::string_view s);
std::optional<Kind> parse_kind(std::string_view s);

/// Wild kinds carry Color::kWild; every other card has a play colour.
struct UnoCard {
  Color color = Color::kWild;
  Kind kind = Kind::kNumber;
  int number = 0;

  bool is_wild() const { return kind == Kind::kWild || kind == Kind::kWildDrawFour; }
  /// Face value for numbers, 20 for Skip/Reverse/DrawTwo, 50 for wild kinds.
  int points() const;
  std::string label() const;

  bool operator==(const UnoCard&) const = default;
};

UnoCard card_from_properties(const Card& card);

class Params final : public GameParameters {
 public:
  int n_cards_per_player = 7;
  int points_to_win = 500;
  /// Relative paths resolve against the data directory.
  std::string deck_file = "uno/deck.json";
  /// Weight of the hand penalty in the heuristic.
  double hand_penalty = 0.5;

  std::unique_ptr<GameParameters> clone() const override { return std::make_unique<Params>(*this); }
  nlohmann::json to_json() const override;
  void from_json(const nlohmann::json& j) override;
  void randomize(Rng& rng) override;
  void validate() const override;
};

/// Cards of the deck file in file order. Parsed files are cached per path.
std::shared_ptr<const std::vector<UnoCard>> load_deck(const std::string& deck_file);

class State final : public GameState {
 public:
  State(std::shared_ptr<const GameParameters> params, int n_players, bool partial_observable);

  std::unique_ptr<GameState> clone() const override { return std::unique_ptr<GameState>(new State(*this)); }
  std::string_view game_name() const override { return "Uno"; }
  double score(int player) const override;
  std::vector<ComponentId> top_level_components() const override;
  std::string describe(int viewer) const override;
  int hand_size(int player) const override { return static_cast<int>(hand(player).size()); }
  nlohmann::json public_info() const override;
  void reset() override;

  const Params& uno_params() const { return static_cast<const Params&>(params()); }

  ComponentId hand_id(int p) const { return hands_.at(static_cast<std::size_t>(p)); }
  ComponentId draw_pile_id() const { return draw_pile_; }
  ComponentId discard_pile_id() const { return discard_pile_; }
  const PartialObservableDeck& hand(int p) const { return get<PartialObservableDeck>(hand_id(p)); }
  PartialObservableDeck& hand(int p) { return get<PartialObservableDeck>(hand_id(p)); }
  const PartialObservableDeck& draw_pile() const { return get<PartialObservableDeck>(draw_pile_); }
  PartialObservableDeck& draw_pile() { return get<PartialObservableDeck>(draw_pile_); }
  const Deck& discard_pile() const { return get<Deck>(discard_pile_); }
  Deck& discard_pile() { return get<Deck>(discard_pile_); }
  const std::vector<ComponentId>& cards() const { return cards_; }

  const UnoCard& card(ComponentId id) const { return card_table_->at(static_cast<std::size_t>(id)); }
  const UnoCard& top_discard() const { return card(discard_pile().top()); }
  Color current_color() const { return current_color_; }
  void set_current_color(Color c) { current_color_ = c; }
  int points(int p) const { return points_.at(static_cast<std::size_t>(p)); }
  void set_points(int p, int v) { points_.at(static_cast<std::size_t>(p)) = v; }
  VisibilityMask hand_visibility(int p) const;

  /// Sum of card points in the player's hand.
  int hand_points(int p) const;
  bool playable(const UnoCard& c) const;
  /// Draws up to `n` cards into the player's hand, recycling the discard pile
  /// (minus its top card) when the draw pile runs out. Returns cards drawn.
  int draw_cards(int player, int n);
  /// Moves the discard pile except its top card back into the draw pile and shuffles.
  void recycle_discards();

 protected:
  void conceal(int player) override;
  void hash_fields(StateHasher& h) const override;

 private:
  friend class ForwardModel;
  State(const State&) = default;

  std::vector<ComponentId> hands_;
  ComponentId draw_pile_ = kNoComponent;
  ComponentId discard_pile_ = kNoComponent;
  std::vector<ComponentId> cards_;
  std::shared_ptr<const std::vector<UnoCard>> card_table_;
  /// Points plus count of the whole deck; bounds any hand's penalty.
  int deck_weight_ = 0;
  Color current_color_ = Color::kRed;
  std::vector<int> points_;
};

class PlayCard final : public ActionBase<PlayCard> {
 public:
  PlayCard(ComponentId hand, ComponentId card, UnoCard face, std::optional<Color> chosen = std::nullopt)
      : hand_(hand), card_(card), face_(face), chosen_(chosen) {}

  void execute(GameState& state) const override;
  std::string to_string() const override;

  ComponentId card() const { return card_; }
  const UnoCard& face() const { return face_; }
  std::optional<Color> chosen_color() const { return chosen_; }

  auto key() const {
    return std::tuple(hand_, card_, static_cast<int>(face_.kind), chosen_ ? static_cast<int>(*chosen_) : -1);
  }

 private:
  ComponentId hand_;
  ComponentId card_;
  UnoCard face_;
  std::optional<Color> chosen_;
};

class DrawCard final : public ActionBase<DrawCard> {
 public:
  explicit DrawCard(int player) : player_(player) {}

  void execute(GameState& state) const override;
  std::string to_string() const override { return "Draw a card"; }

  auto key() const { return std::tuple(player_); }

 private:
  int player_;
};

class ForwardModel final : public tag::ForwardModel {
 public:
  std::unique_ptr<tag::ForwardModel> copy() const override { return std::make_unique<ForwardModel>(); }

  /// Gathers every card, shuffles, deals and flips a Number card to start.
  void setup_round(State& state, int first_player) const;
  /// Scores a finished round for `winner`; ends the game or deals the next round.
  void score_round(State& state, int winner) const;

 protected:
  void do_setup(GameState& state) const override;
  void do_next(GameState& state, const Action& action) const override;
  std::vector<ActionPtr> do_compute_actions(const GameState& state) const override;
};

GameDescriptor descriptor();

}  // namespace tag::uno
