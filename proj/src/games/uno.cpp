#include "tag/games/uno.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "tag/core/conceal.hpp"
#include "tag/core/errors.hpp"
#include "tag/core/json_loader.hpp"

namespace tag::uno {

namespace {

constexpr std::array<std::string_view, 5> kColorNames = {"Red", "Green", "Blue", "Yellow", "Wild"};
constexpr std::array<std::string_view, 6> kKindNames = {"Number", "Skip", "Reverse", "DrawTwo", "Wild", "WildDrawFour"};

}  // namespace

std::string_view name(Color c) { return kColorNames.at(static_cast<std::size_t>(c)); }
std::string_view name(Kind k) { return kKindNames.at(static_cast<std::size_t>(k)); }

std::optional<Color> parse_color(std::string_view s) {
  for (std::size_t i = 0; i < kColorNames.size(); ++i) {
    if (kColorNames[i] == s) return static_cast<Color>(i);
  }
  return std::nullopt;
}

std::optional<Kind> parse_kind(std::string_view s) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == s) return static_cast<Kind>(i);
  }
  return std::nullopt;
}

int UnoCard::points() const {
  switch (kind) {
    case Kind::kNumber: return number;
    case Kind::kSkip:
    case Kind::kReverse:
    case Kind::kDrawTwo: return 20;
    case Kind::kWild:
    case Kind::kWildDrawFour: return 50;
  }
  return 0;
}

std::string UnoCard::label() const {
  if (is_wild()) return std::string(name(kind));
  if (kind == Kind::kNumber) return std::string(name(color)) + " " + std::to_string(number);
  return std::string(name(color)) + " " + std::string(name(kind));
}

UnoCard card_from_properties(const Card& card) {
  UnoCard c;
  const auto kind = parse_kind(card.get_string("type"));
  const auto color = parse_color(card.get_string("color"));
  if (!kind || !color) throw SchemaError("Uno card needs a valid 'type' and 'color'");
  c.kind = *kind;
  c.color = *color;
  if (c.kind == Kind::kNumber) {
    c.number = static_cast<int>(card.get_int("number"));
    if (c.number < 0 || c.number > 9) throw SchemaError("Uno number cards range over 0..9");
  }
  if (c.is_wild() != (c.color == Color::kWild)) throw SchemaError("only wild kinds have colour Wild: " + c.label());
  return c;
}

std::shared_ptr<const std::vector<UnoCard>> load_deck(const std::string& deck_file) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const std::vector<UnoCard>>> cache;
  std::filesystem::path path(deck_file);
  if (path.is_relative()) path = data_dir() / path;
  const std::string key = path.string();

  std::lock_guard lock(mutex);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto deck = std::make_shared<std::vector<UnoCard>>();
  for (const auto& c : load_json_components(path)) {
    if (c.kind() != ComponentKind::kCard) throw SchemaError(key + ": Uno deck may only contain cards");
    deck->push_back(card_from_properties(c.as<Card>()));
  }
  if (deck->empty()) throw SchemaError(key + ": empty Uno deck");
  cache.emplace(key, deck);
  return deck;
}

// ---------------------------------------------------------------------------
// Params

nlohmann::json Params::to_json() const {
  auto j = GameParameters::to_json();
  j["nCardsPerPlayer"] = n_cards_per_player;
  j["pointsToWin"] = points_to_win;
  j["deckFile"] = deck_file;
  j["handPenalty"] = hand_penalty;
  return j;
}

void Params::from_json(const nlohmann::json& j) {
  GameParameters::from_json(j);
  if (j.contains("nCardsPerPlayer")) n_cards_per_player = j.at("nCardsPerPlayer").get<int>();
  if (j.contains("pointsToWin")) points_to_win = j.at("pointsToWin").get<int>();
  if (j.contains("deckFile")) deck_file = j.at("deckFile").get<std::string>();
  if (j.contains("handPenalty")) hand_penalty = j.at("handPenalty").get<double>();
}

void Params::randomize(Rng& rng) {
  n_cards_per_player = 5 + rng.uniform_int(5);
  points_to_win = 100 * (2 + rng.uniform_int(6));
}

void Params::validate() const {
  if (n_cards_per_player < 1) throw InvalidArgumentError("nCardsPerPlayer must be positive");
  if (points_to_win < 1) throw InvalidArgumentError("pointsToWin must be positive");
  if (hand_penalty < 0) throw InvalidArgumentError("handPenalty must not be negative");
}

// ---------------------------------------------------------------------------
// State

State::State(std::shared_ptr<const GameParameters> params, int n_players, bool partial_observable)
    : GameState(std::move(params), n_players, TurnOrder(n_players, /*auto_rounds=*/false), partial_observable) {
  if (n_players < 2 || n_players > 10) throw InvalidArgumentError("Uno is played by 2 to 10 players");
}

void State::reset() {
  GameState::reset();
  hands_.clear();
  draw_pile_ = kNoComponent;
  discard_pile_ = kNoComponent;
  cards_.clear();
  card_table_.reset();
  deck_weight_ = 0;
  current_color_ = Color::kRed;
  points_.assign(static_cast<std::size_t>(n_players()), 0);
}

VisibilityMask State::hand_visibility(int p) const {
  return partial_observable() ? visible_to(p) : visible_to_all(n_players());
}

int State::hand_points(int p) const {
  int total = 0;
  for (ComponentId id : hand(p).contents()) total += card(id).points();
  return total;
}

bool State::playable(const UnoCard& c) const {
  if (c.is_wild() || c.color == current_color_) return true;
  const UnoCard& top = top_discard();
  if (c.kind != top.kind) return false;
  return c.kind != Kind::kNumber || c.number == top.number;
}

void State::recycle_discards() {
  auto& discard = discard_pile();
  if (discard.size() <= 1) return;
  const ComponentId top = discard.draw();
  auto& pile = draw_pile();
  while (!discard.empty()) pile.add(discard.draw(), 0);
  discard.add(top);
  pile.shuffle(rng());
}

int State::draw_cards(int player, int n) {
  auto& h = hand(player);
  int drawn = 0;
  for (; drawn < n; ++drawn) {
    if (draw_pile().empty()) recycle_discards();
    if (draw_pile().empty()) break;
    h.add(draw_pile().draw("drawPile"), hand_visibility(player));
  }
  return drawn;
}

double State::score(int player) const {
  const PlayerResult r = result(player);
  if (r == PlayerResult::kWin) return 1.0;
  if (r != PlayerResult::kOngoing) return -1.0;
  const auto& p = uno_params();
  // Counting cards as well as points keeps a zero card from being free.
  const double penalty = static_cast<double>(hand_points(player) + static_cast<int>(hand(player).size())) /
                         static_cast<double>(std::max(1, deck_weight_));
  const double v = static_cast<double>(points(player)) / p.points_to_win - p.hand_penalty * penalty;
  return std::clamp(v, -1.0, 1.0);
}

std::vector<ComponentId> State::top_level_components() const {
  std::vector<ComponentId> out(hands_.begin(), hands_.end());
  out.push_back(draw_pile_);
  out.push_back(discard_pile_);
  return out;
}

std::string State::describe(int viewer) const {
  std::ostringstream out;
  out << "Round " << turn_order().round_counter() + 1 << ", player " << current_player() << " to act, direction "
      << (turn_order().direction() > 0 ? "+1" : "-1") << "\n";
  out << "top discard: " << top_discard().label() << ", colour " << name(current_color_) << ", draw pile "
      << draw_pile().size() << " cards\n";
  for (int p = 0; p < n_players(); ++p) {
    out << "p" << p << (p == viewer ? " (you)" : "") << ": points=" << points(p) << " hand=[";
    const auto& h = hand(p);
    for (std::size_t i = 0; i < h.size(); ++i) {
      out << (i ? ", " : "") << (h.is_visible(i, viewer) ? card(h.at(i)).label() : "?");
    }
    out << "]\n";
  }
  return out.str();
}

nlohmann::json State::public_info() const {
  return {{"currentColor", std::string(name(current_color_))},
          {"topDiscard", top_discard().label()},
          {"direction", turn_order().direction()},
          {"points", points_},
          {"pointsToWin", uno_params().points_to_win},
          {"round", turn_order().round_counter()}};
}

void State::conceal(int player) {
  std::vector<ComponentId> decks;
  for (int p = 0; p < n_players(); ++p) {
    if (p != player) decks.push_back(hand_id(p));
  }
  decks.push_back(draw_pile_);
  conceal_and_redraw(registry_, decks, player, rng());
}

void State::hash_fields(StateHasher& h) const {
  h.add(static_cast<int>(current_color_));
  for (int v : points_) h.add(v);
}

// ---------------------------------------------------------------------------
// Actions

void PlayCard::execute(GameState& state) const {
  auto& s = dynamic_cast<State&>(state);
  auto& hand = s.get<PartialObservableDeck>(hand_);
  if (!hand.remove(card_)) throw IllegalActionError("card " + std::to_string(card_) + " is not in hand");
  s.discard_pile().add(card_);
  s.set_current_color(face_.is_wild() ? chosen_.value_or(Color::kRed) : face_.color);
}

std::string PlayCard::to_string() const {
  std::string out = "Play " + face_.label();
  if (chosen_) out += " choosing " + std::string(name(*chosen_));
  return out;
}

void DrawCard::execute(GameState& state) const {
  dynamic_cast<State&>(state).draw_cards(player_, 1);
}

// ---------------------------------------------------------------------------
// Forward model

void ForwardModel::do_setup(GameState& state) const {
  auto& s = dynamic_cast<State&>(state);
  const auto& p = s.uno_params();
  const int n = s.n_players();
  const auto deck = load_deck(p.deck_file);
  if (static_cast<int>(deck->size()) < n * p.n_cards_per_player + 1) {
    throw InvalidArgumentError("Uno deck too small for this table");
  }

  std::vector<Component> cards;
  cards.reserve(deck->size());
  for (const auto& c : *deck) {
    Properties props{{"color", std::string(name(c.color))}, {"type", std::string(name(c.kind))}};
    if (c.kind == Kind::kNumber) props.emplace("number", std::int64_t{c.number});
    cards.push_back(Component{kNoComponent, kNoPlayer, c.label(), Card(std::move(props))});
  }
  s.draw_pile_ = s.register_container({kNoComponent, kNoPlayer, "drawPile", PartialObservableDeck(n, 0)},
                                      std::move(cards));
  s.cards_.assign(s.draw_pile().contents().begin(), s.draw_pile().contents().end());
  auto table = std::make_shared<std::vector<UnoCard>>(s.registry().size());
  for (std::size_t i = 0; i < s.cards_.size(); ++i) (*table)[static_cast<std::size_t>(s.cards_[i])] = (*deck)[i];
  s.card_table_ = std::move(table);
  s.deck_weight_ = static_cast<int>(deck->size());
  for (const auto& c : *deck) s.deck_weight_ += c.points();

  s.discard_pile_ = s.register_component({kNoComponent, kNoPlayer, "discardPile", Deck()});
  for (int i = 0; i < n; ++i) {
    s.hands_.push_back(s.register_component(
        {kNoComponent, i, "playerHand" + std::to_string(i), PartialObservableDeck(n, s.hand_visibility(i))}));
  }
  s.points_.assign(static_cast<std::size_t>(n), 0);
  setup_round(s, 0);
}

void ForwardModel::setup_round(State& s, int first_player) const {
  const int n = s.n_players();
  auto& pile = s.draw_pile();
  pile.clear();
  s.discard_pile().clear();
  for (int i = 0; i < n; ++i) s.hand(i).clear();
  for (ComponentId c : s.cards_) pile.add_bottom(c, 0);
  pile.shuffle(s.rng());

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < s.uno_params().n_cards_per_player; ++j) {
      s.hand(i).add(pile.draw("drawPile"), s.hand_visibility(i));
    }
  }
  const bool has_number = std::any_of(pile.contents().begin(), pile.contents().end(),
                                     [&](ComponentId c) { return s.card(c).kind == Kind::kNumber; });
  if (!has_number) throw InvalidArgumentError("Uno deck leaves no Number card to start the discard pile");
  // Reshuffle until the flipped card is a Number card.
  for (;;) {
    const ComponentId top = pile.top();
    if (s.card(top).kind == Kind::kNumber) {
      s.discard_pile().add(pile.draw("drawPile"));
      s.set_current_color(s.card(top).color);
      break;
    }
    pile.shuffle(s.rng());
  }
  s.turn_order().set_first_player(first_player);
  if (s.turn_order().direction() < 0) s.turn_order().reverse();
}

void ForwardModel::score_round(State& s, int winner) const {
  int gained = 0;
  for (int p = 0; p < s.n_players(); ++p) {
    if (p != winner) gained += s.hand_points(p);
  }
  s.set_points(winner, s.points(winner) + gained);
  s.turn_order().end_round();
  if (s.points(winner) >= s.uno_params().points_to_win) {
    for (int p = 0; p < s.n_players(); ++p) s.set_result(p, p == winner ? PlayerResult::kWin : PlayerResult::kLose);
    s.end_game();
    return;
  }
  setup_round(s, winner);
}

void ForwardModel::do_next(GameState& state, const Action& action) const {
  auto& s = dynamic_cast<State&>(state);
  const int player = s.current_player();
  action.execute(s);
  auto& order = s.turn_order();

  const auto* play = dynamic_cast<const PlayCard*>(&action);
  if (play == nullptr) {
    order.end_player_turn(s.results());
    return;
  }
  if (s.hand(player).empty()) {
    order.end_player_turn(s.results());
    score_round(s, player);
    return;
  }
  switch (play->face().kind) {
    case Kind::kNumber:
    case Kind::kWild:
      break;
    case Kind::kSkip:
      order.skip_next(s.results());
      break;
    case Kind::kReverse:
      if (s.n_players() == 2) {
        order.skip_next(s.results());
      } else {
        order.reverse();
      }
      break;
    case Kind::kDrawTwo:
    case Kind::kWildDrawFour: {
      const int victim = order.next_player(player, s.results());
      s.draw_cards(victim, play->face().kind == Kind::kDrawTwo ? 2 : 4);
      order.skip_next(s.results());
      break;
    }
  }
  order.end_player_turn(s.results());
}

std::vector<ActionPtr> ForwardModel::do_compute_actions(const GameState& state) const {
  const auto& s = dynamic_cast<const State&>(state);
  const int player = s.current_player();
  const ComponentId hand = s.hand_id(player);
  std::vector<ActionPtr> actions;
  for (ComponentId id : s.hand(player).contents()) {
    const UnoCard& c = s.card(id);
    if (!s.playable(c)) continue;
    if (c.is_wild()) {
      for (Color chosen : kPlayColors) actions.push_back(make_action<PlayCard>(hand, id, c, chosen));
    } else {
      actions.push_back(make_action<PlayCard>(hand, id, c));
    }
  }
  if (actions.empty()) actions.push_back(make_action<DrawCard>(player));
  return actions;
}

GameDescriptor descriptor() {
  GameDescriptor d;
  d.name = "Uno";
  d.min_players = 2;
  d.max_players = 10;
  d.categories = {Category::kCards, Category::kFamily};
  d.mechanics = {Mechanic::kHandManagement, Mechanic::kPointsSystem, Mechanic::kTakeThat};
  d.make_parameters = [] { return std::make_unique<Params>(); };
  d.make_state = [](std::shared_ptr<const GameParameters> params, int n, const CoreConfig& config) {
    return std::unique_ptr<GameState>(std::make_unique<State>(std::move(params), n, config.partial_observable));
  };
  d.make_forward_model = [] { return std::make_shared<const ForwardModel>(); };
  return d;
}

}  // namespace tag::uno
