#include "tag/games/loveletter.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tag/core/conceal.hpp"
#include "tag/core/errors.hpp"
#include "tag/core/json_loader.hpp"

namespace tag::loveletter {

std::string_view name(CardType t) {
  switch (t) {
    case CardType::kGuard: return "Guard";
    case CardType::kPriest: return "Priest";
    case CardType::kBaron: return "Baron";
    case CardType::kHandmaid: return "Handmaid";
    case CardType::kPrince: return "Prince";
    case CardType::kKing: return "King";
    case CardType::kCountess: return "Countess";
    case CardType::kPrincess: return "Princess";
  }
  return "?";
}

std::optional<CardType> parse_card_type(std::string_view s) {
  for (auto t : kAllCardTypes) {
    if (name(t) == s) return t;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Params

int Params::deck_size() const {
  int n = 0;
  for (const auto& [type, count] : card_counts) n += count;
  return n;
}

int Params::tokens_to_win(int n_players) const {
  const auto idx = static_cast<std::size_t>(n_players - 1);
  return idx < n_tokens_win.size() ? n_tokens_win[idx] : n_tokens_win.back();
}

Params Params::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open Love Letter parameters " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  parse_json_components(text, path.string());  // schema and line-numbered syntax errors
  const auto raw = nlohmann::json::parse(text);

  Params p;
  p.card_counts.clear();
  std::map<int, int> thresholds;
  for (const auto& entry : raw) {
    const auto kind = entry.at("kind").get<std::string>();
    const auto entry_name = entry.value("name", std::string{});
    const auto props = entry.value("properties", nlohmann::json::object());
    if (kind == "card") {
      const auto type = parse_card_type(entry_name);
      if (!type) throw SchemaError(path.string() + ": unknown Love Letter card '" + entry_name + "'");
      p.card_counts[*type] += entry.value("count", 1);
    } else if (kind == "counter" && entry_name == "affectionTokens") {
      if (!props.contains("nPlayers") || !props.contains("max")) {
        throw SchemaError(path.string() + ": affectionTokens needs nPlayers and max");
      }
      thresholds[props.at("nPlayers").get<int>()] = props.at("max").get<int>();
    }
  }
  if (!thresholds.empty()) {
    p.n_tokens_win.clear();
    int last = thresholds.begin()->second;
    for (int n = 1; n <= thresholds.rbegin()->first; ++n) {
      if (auto it = thresholds.find(n); it != thresholds.end()) last = it->second;
      p.n_tokens_win.push_back(last);
    }
  }
  p.validate();
  return p;
}

nlohmann::json Params::to_json() const {
  auto j = GameParameters::to_json();
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [type, count] : card_counts) counts[std::string(name(type))] = count;
  j["cardCounts"] = counts;
  j["nCardsPerPlayer"] = n_cards_per_player;
  j["nCardsVisibleReserve"] = n_cards_visible_reserve;
  j["nTokensWin"] = n_tokens_win;
  j["factorCards"] = factor_cards;
  j["factorAffection"] = factor_affection;
  j["countessPlayThreshold"] = countess_play_threshold;
  return j;
}

void Params::from_json(const nlohmann::json& j) {
  GameParameters::from_json(j);
  if (j.contains("cardCounts")) {
    card_counts.clear();
    for (const auto& [key, count] : j.at("cardCounts").items()) {
      const auto type = parse_card_type(key);
      if (!type) throw InvalidArgumentError("unknown Love Letter card '" + key + "'");
      card_counts[*type] = count.get<int>();
    }
  }
  if (j.contains("nCardsPerPlayer")) n_cards_per_player = j.at("nCardsPerPlayer").get<int>();
  if (j.contains("nCardsVisibleReserve")) n_cards_visible_reserve = j.at("nCardsVisibleReserve").get<int>();
  if (j.contains("nTokensWin")) n_tokens_win = j.at("nTokensWin").get<std::vector<int>>();
  if (j.contains("factorCards")) factor_cards = j.at("factorCards").get<double>();
  if (j.contains("factorAffection")) factor_affection = j.at("factorAffection").get<double>();
  if (j.contains("countessPlayThreshold")) countess_play_threshold = j.at("countessPlayThreshold").get<double>();
}

void Params::randomize(Rng& rng) {
  for (auto& t : n_tokens_win) t = 3 + rng.uniform_int(5);
}

void Params::validate() const {
  for (const auto& [type, count] : card_counts) {
    if (count < 0) throw InvalidArgumentError("negative Love Letter card count");
  }
  if (n_cards_per_player < 1) throw InvalidArgumentError("nCardsPerPlayer must be at least 1");
  if (n_cards_visible_reserve < 0) throw InvalidArgumentError("nCardsVisibleReserve must not be negative");
  if (n_tokens_win.empty()) throw InvalidArgumentError("nTokensWin must not be empty");
  for (int t : n_tokens_win) {
    if (t < 1) throw InvalidArgumentError("nTokensWin entries must be positive");
  }
}

// ---------------------------------------------------------------------------
// State

State::State(std::shared_ptr<const GameParameters> params, int n_players, bool partial_observable)
    : GameState(std::move(params), n_players, TurnOrder(n_players, /*auto_rounds=*/false), partial_observable) {
  if (n_players < 2 || n_players > 4) throw InvalidArgumentError("Love Letter is played by 2 to 4 players");
  const auto& p = ll_params();
  const int needed = 1 + (n_players == 2 ? p.n_cards_visible_reserve : 0) + n_players * p.n_cards_per_player + 1;
  if (p.deck_size() < needed) throw InvalidArgumentError("Love Letter deck too small for this table");
}

void State::reset() {
  GameState::reset();
  hands_.clear();
  discards_.clear();
  draw_pile_ = kNoComponent;
  reserve_ = kNoComponent;
  cards_.clear();
  card_types_.reset();
  protection_.assign(static_cast<std::size_t>(n_players()), false);
  tokens_.assign(static_cast<std::size_t>(n_players()), 0);
}

VisibilityMask State::hand_visibility(int p) const {
  return partial_observable() ? visible_to(p) : visible_to_all(n_players());
}

void State::eliminate(int p) {
  set_result(p, PlayerResult::kLose);
  auto& h = hand(p);
  while (!h.empty()) discard(p).add(h.draw());
}

int State::hand_value(int p) const {
  int v = 0;
  for (ComponentId c : hand(p).contents()) v += value(card_type(c));
  return v;
}

int State::discard_value(int p) const {
  int v = 0;
  for (ComponentId c : discard(p).contents()) v += value(card_type(c));
  return v;
}

double State::score(int player) const {
  const PlayerResult r = result(player);
  if (r == PlayerResult::kLose || r == PlayerResult::kDisqualified) return -1.0;
  if (r == PlayerResult::kWin) return 1.0;

  const auto& p = ll_params();
  double card_values = 0.0;
  Rng r_countess(p.seed);
  for (ComponentId c : hand(player).contents()) {
    const CardType t = card_type(c);
    if (t == CardType::kCountess) {
      if (r_countess.uniform_real() > p.countess_play_threshold) card_values += value(t);
    } else {
      card_values += value(t);
    }
  }
  const double max_card_value = 1.0 + static_cast<double>(hand(player).size()) * kMaxCardValue;
  double required = p.tokens_to_win(n_players());
  required = std::max(required, static_cast<double>(affection_tokens(player)));
  return p.factor_cards * (card_values / max_card_value) +
         p.factor_affection * (affection_tokens(player) / required);
}

std::vector<ComponentId> State::top_level_components() const {
  std::vector<ComponentId> out(hands_.begin(), hands_.end());
  out.insert(out.end(), discards_.begin(), discards_.end());
  out.push_back(draw_pile_);
  out.push_back(reserve_);
  return out;
}

std::string State::phase_name() const { return phase() == kDrawPhase ? "Draw" : GameState::phase_name(); }

std::string State::describe(int viewer) const {
  std::ostringstream out;
  out << "Round " << turn_order().round_counter() + 1 << ", phase " << phase_name() << ", player "
      << current_player() << " to act\n";
  for (int p = 0; p < n_players(); ++p) {
    out << "p" << p << (p == viewer ? " (you)" : "") << ": tokens=" << affection_tokens(p)
        << (is_protected(p) ? " protected" : "") << (is_alive(p) ? "" : " out") << " hand=[";
    const auto& h = hand(p);
    for (std::size_t i = 0; i < h.size(); ++i) {
      out << (i ? " " : "") << (h.is_visible(i, viewer) || !partial_observable() ? name(card_type(h.at(i))) : "?");
    }
    out << "] discards=[";
    const auto& d = discard(p);
    for (std::size_t i = 0; i < d.size(); ++i) out << (i ? " " : "") << name(card_type(d.at(i)));
    out << "]\n";
  }
  out << "draw pile: " << draw_pile().size() << " cards, reserve: [";
  const auto& r = reserve();
  for (std::size_t i = 0; i < r.size(); ++i) {
    out << (i ? " " : "") << (r.is_visible(i, viewer) ? name(card_type(r.at(i))) : "?");
  }
  out << "]\n";
  return out.str();
}

nlohmann::json State::public_info() const {
  std::vector<bool> alive;
  for (int p = 0; p < n_players(); ++p) alive.push_back(is_alive(p));
  return {{"affectionTokens", tokens_},
          {"tokensToWin", ll_params().tokens_to_win(n_players())},
          {"protected", protection_},
          {"inRound", alive},
          {"round", turn_order().round_counter()}};
}

void State::conceal(int player) {
  std::vector<ComponentId> decks;
  for (int p = 0; p < n_players(); ++p) {
    if (p != player) decks.push_back(hand_id(p));
  }
  decks.push_back(draw_pile_);
  decks.push_back(reserve_);
  conceal_and_redraw(registry_, decks, player, rng());
}

void State::hash_fields(StateHasher& h) const {
  for (bool b : protection_) h.add(b);
  for (int t : tokens_) h.add(t);
}

// ---------------------------------------------------------------------------
// Actions

void DrawCard::execute(GameState& state) const {
  auto& s = dynamic_cast<State&>(state);
  const int p = s.current_player();
  s.set_protected(p, false);
  auto& to = s.get<PartialObservableDeck>(to_);
  to.add(s.get<PartialObservableDeck>(from_).draw("drawPile"), to.default_visibility());
}

namespace {

void require_target(const State& s, int target) {
  if (target < 0 || target >= s.n_players()) throw IllegalActionError("Love Letter target out of range");
  if (!s.is_alive(target)) throw IllegalActionError("player " + std::to_string(target) + " is out of the round");
}

// Target discards their hand and draws a fresh card; the face-down reserve
// card is used once the draw pile is empty.
void prince_effect(State& s, int target) {
  auto& h = s.hand(target);
  bool discarded_princess = false;
  while (!h.empty()) {
    const ComponentId c = h.draw();
    discarded_princess = discarded_princess || s.card_type(c) == CardType::kPrincess;
    s.discard(target).add(c);
  }
  if (discarded_princess) {
    s.eliminate(target);
    return;
  }
  if (!s.draw_pile().empty()) {
    h.add(s.draw_pile().draw(), s.hand_visibility(target));
    return;
  }
  auto& reserve = s.reserve();
  const VisibilityMask everyone = visible_to_all(s.n_players());
  for (std::size_t i = 0; i < reserve.size(); ++i) {
    if (reserve.visibility(i) != everyone) {
      h.add(reserve.remove_at(i), s.hand_visibility(target));
      return;
    }
  }
}

void king_effect(State& s, int actor, int target) {
  auto& mine = s.hand(actor);
  auto& theirs = s.hand(target);
  std::vector<ComponentId> a(mine.contents().begin(), mine.contents().end());
  std::vector<ComponentId> b(theirs.contents().begin(), theirs.contents().end());
  mine.clear();
  theirs.clear();
  // Both players know both cards after the swap.
  const VisibilityMask both = s.hand_visibility(actor) | s.hand_visibility(target);
  for (auto it = b.rbegin(); it != b.rend(); ++it) mine.add(*it, both);
  for (auto it = a.rbegin(); it != a.rend(); ++it) theirs.add(*it, both);
}

}  // namespace

void PlayCard::execute(GameState& state) const {
  auto& s = dynamic_cast<State&>(state);
  const int actor = s.current_player();
  auto& hand = s.get<PartialObservableDeck>(hand_);
  if (!hand.remove(card_)) throw IllegalActionError("card " + std::to_string(card_) + " is not in hand");
  s.get<Deck>(discard_).add(card_);

  const bool targeted = type_ == CardType::kGuard || type_ == CardType::kPriest || type_ == CardType::kBaron ||
                        type_ == CardType::kPrince || type_ == CardType::kKing;
  if (targeted) require_target(s, target_);
  const bool affected = targeted && (target_ == actor || !s.is_protected(target_));

  switch (type_) {
    case CardType::kGuard:
      if (affected && guess_ && !s.hand(target_).empty() && s.card_type(s.hand(target_).top()) == *guess_) {
        s.eliminate(target_);
      }
      break;
    case CardType::kPriest:
      if (affected) s.hand(target_).set_visibility_all(actor, true);
      break;
    case CardType::kBaron:
      if (affected && !s.hand(actor).empty() && !s.hand(target_).empty()) {
        const int mine = value(s.card_type(s.hand(actor).top()));
        const int theirs = value(s.card_type(s.hand(target_).top()));
        if (theirs < mine) {
          s.eliminate(target_);
        } else if (mine < theirs) {
          s.eliminate(actor);
        }
      }
      break;
    case CardType::kHandmaid:
      s.set_protected(actor, true);
      break;
    case CardType::kPrince:
      if (affected) prince_effect(s, target_);
      break;
    case CardType::kKing:
      if (affected) king_effect(s, actor, target_);
      break;
    case CardType::kCountess:
      break;
    case CardType::kPrincess:
      s.eliminate(actor);
      break;
  }
}

std::string PlayCard::to_string() const {
  std::string out = "p" + std::to_string(player_) + " plays " + std::string(name(type_));
  if (target_ != kNoPlayer) out += " on p" + std::to_string(target_);
  if (guess_) out += " guessing " + std::string(name(*guess_));
  return out;
}

// ---------------------------------------------------------------------------
// Forward model

void ForwardModel::do_setup(GameState& state) const {
  auto& s = dynamic_cast<State&>(state);
  const auto& p = s.ll_params();
  const int n = s.n_players();

  std::vector<Component> cards;
  std::vector<CardType> types;
  for (const auto& [type, count] : p.card_counts) {
    for (int i = 0; i < count; ++i) {
      Component c;
      c.name = std::string(name(type));
      c.body = Card(Properties{{"type", std::string(name(type))}, {"value", std::int64_t{value(type)}}});
      cards.push_back(std::move(c));
      types.push_back(type);
    }
  }
  Component draw_pile{kNoComponent, kNoPlayer, "drawPile", PartialObservableDeck(n, 0)};
  s.draw_pile_ = s.register_container(std::move(draw_pile), std::move(cards));
  for (ComponentId id : s.draw_pile().contents()) s.cards_.push_back(id);

  auto table = std::make_shared<std::vector<CardType>>(s.registry().size(), CardType::kGuard);
  for (std::size_t i = 0; i < s.cards_.size(); ++i) (*table)[static_cast<std::size_t>(s.cards_[i])] = types[i];
  s.card_types_ = std::move(table);

  s.reserve_ = s.register_component({kNoComponent, kNoPlayer, "reserveCards", PartialObservableDeck(n, 0)});
  for (int i = 0; i < n; ++i) {
    s.hands_.push_back(s.register_component(
        {kNoComponent, i, "playerHand" + std::to_string(i), PartialObservableDeck(n, s.hand_visibility(i))}));
    s.discards_.push_back(s.register_component({kNoComponent, i, "discardPlayer" + std::to_string(i), Deck()}));
  }
  s.protection_.assign(static_cast<std::size_t>(n), false);
  s.tokens_.assign(static_cast<std::size_t>(n), 0);
  s.turn_order().reset(0);
  setup_round(s, nullptr);
}

void ForwardModel::setup_round(State& s, const std::vector<int>* previous_winners) const {
  const auto& p = s.ll_params();
  const int n = s.n_players();

  std::fill(s.protection_.begin(), s.protection_.end(), false);
  for (int i = 0; i < n; ++i) s.set_result(i, PlayerResult::kOngoing);

  auto& pile = s.draw_pile();
  pile.clear();
  s.reserve().clear();
  for (int i = 0; i < n; ++i) {
    s.hand(i).clear();
    s.discard(i).clear();
  }
  for (ComponentId c : s.cards_) pile.add_bottom(c, 0);

  Rng r(p.seed ^ static_cast<std::uint64_t>(s.turn_order().round_counter()));
  pile.shuffle(r);
  s.reserve().add(pile.draw("drawPile"), 0);
  if (n == 2) {
    for (int i = 0; i < p.n_cards_visible_reserve; ++i) s.reserve().add(pile.draw("drawPile"), visible_to_all(n));
  }
  for (int i = 0; i < n; ++i) {
    auto& h = s.hand(i);
    h.set_default_visibility(s.hand_visibility(i));
    for (int j = 0; j < p.n_cards_per_player; ++j) h.add(pile.draw("drawPile"), s.hand_visibility(i));
  }
  s.set_phase(kDrawPhase);

  if (previous_winners != nullptr && !previous_winners->empty()) {
    const int pick = r.uniform_int(static_cast<int>(previous_winners->size()));
    s.turn_order().set_first_player((*previous_winners)[static_cast<std::size_t>(pick)]);
  } else {
    s.turn_order().set_first_player(0);
  }
}

std::vector<int> ForwardModel::round_winners(const State& s) {
  std::vector<int> alive;
  for (int p = 0; p < s.n_players(); ++p) {
    if (s.is_alive(p)) alive.push_back(p);
  }
  if (alive.size() <= 1) return alive;

  int best_hand = -1;
  for (int p : alive) best_hand = std::max(best_hand, s.hand_value(p));
  std::vector<int> by_hand;
  for (int p : alive) {
    if (s.hand_value(p) == best_hand) by_hand.push_back(p);
  }
  int best_discard = -1;
  for (int p : by_hand) best_discard = std::max(best_discard, s.discard_value(p));
  std::vector<int> winners;
  for (int p : by_hand) {
    if (s.discard_value(p) == best_discard) winners.push_back(p);
  }
  return winners;
}

void ForwardModel::check_round_end(State& s) const {
  int alive = 0;
  for (int p = 0; p < s.n_players(); ++p) alive += s.is_alive(p) ? 1 : 0;
  if (alive > 1 && !s.draw_pile().empty()) return;

  const std::vector<int> winners = round_winners(s);
  for (int w : winners) s.set_affection_tokens(w, s.affection_tokens(w) + 1);
  s.turn_order().end_round();

  const int needed = s.ll_params().tokens_to_win(s.n_players());
  bool game_over = false;
  for (int p = 0; p < s.n_players(); ++p) game_over = game_over || s.affection_tokens(p) >= needed;
  if (!game_over) {
    setup_round(s, &winners);
    return;
  }
  for (int p = 0; p < s.n_players(); ++p) {
    s.set_result(p, s.affection_tokens(p) >= needed ? PlayerResult::kWin : PlayerResult::kLose);
  }
  s.end_game();
}

void ForwardModel::do_next(GameState& state, const Action& action) const {
  auto& s = dynamic_cast<State&>(state);
  action.execute(s);
  if (s.phase() == kDrawPhase) {
    s.set_phase(kMainPhase);
  } else if (s.phase() == kMainPhase) {
    s.set_phase(kDrawPhase);
    s.turn_order().end_player_turn(s.results());
    check_round_end(s);
  } else {
    throw TagError("Love Letter: unknown game phase " + s.phase_name());
  }
}

std::vector<ActionPtr> ForwardModel::do_compute_actions(const GameState& state) const {
  const auto& s = dynamic_cast<const State&>(state);
  const int player = s.current_player();
  std::vector<ActionPtr> actions;
  if (s.phase() == kDrawPhase) {
    actions.push_back(make_action<DrawCard>(s.draw_pile_id(), s.hand_id(player)));
    return actions;
  }
  if (s.phase() != kMainPhase) throw TagError("Love Letter: unknown game phase " + s.phase_name());

  const ComponentId hand = s.hand_id(player);
  const ComponentId discard = s.discard_id(player);
  for (ComponentId card : s.hand(player).contents()) {
    const CardType type = s.card_type(card);
    switch (type) {
      case CardType::kGuard:
        for (int t = 0; t < s.n_players(); ++t) {
          if (t == player || s.result(t) == PlayerResult::kLose) continue;
          for (CardType guess : kAllCardTypes) {
            actions.push_back(make_action<PlayCard>(hand, discard, card, type, player, t, guess));
          }
        }
        break;
      case CardType::kPriest:
      case CardType::kBaron:
      case CardType::kPrince:
      case CardType::kKing:
        for (int t = 0; t < s.n_players(); ++t) {
          if (t == player || s.result(t) == PlayerResult::kLose) continue;
          actions.push_back(make_action<PlayCard>(hand, discard, card, type, player, t));
        }
        break;
      case CardType::kHandmaid:
      case CardType::kCountess:
      case CardType::kPrincess:
        actions.push_back(make_action<PlayCard>(hand, discard, card, type, player));
        break;
    }
  }
  return actions;
}

GameDescriptor descriptor() {
  GameDescriptor d;
  d.name = "LoveLetter";
  d.min_players = 2;
  d.max_players = 4;
  d.categories = {Category::kCards, Category::kFamily};
  d.mechanics = {Mechanic::kHandManagement, Mechanic::kPlayerElimination, Mechanic::kPointsSystem,
                 Mechanic::kDeduction};
  d.make_parameters = [] { return std::make_unique<Params>(); };
  d.make_state = [](std::shared_ptr<const GameParameters> params, int n, const CoreConfig& config) {
    return std::unique_ptr<GameState>(std::make_unique<State>(std::move(params), n, config.partial_observable));
  };
  d.make_forward_model = [] { return std::make_shared<const ForwardModel>(); };
  return d;
}

}  // namespace tag::loveletter
