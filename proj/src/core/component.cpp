#include "tag/core/component.hpp"

#include <algorithm>

#include "tag/core/errors.hpp"

namespace tag {

Die::Die(int sides, int value) : sides_(sides), value_(value) {
  if (sides < 1) throw InvalidArgumentError("die needs at least one side");
  set_value(value);
}

void Die::set_value(int value) {
  if (value < 1 || value > sides_) throw InvalidArgumentError("die value out of range");
  value_ = value;
}

int Die::roll(Rng& rng) {
  value_ = 1 + rng.uniform_int(sides_);
  return value_;
}

const PropertyValue* Card::find(std::string_view key) const {
  auto it = properties_->find(key);
  return it == properties_->end() ? nullptr : &it->second;
}

std::int64_t Card::get_int(std::string_view key) const {
  const PropertyValue* v = find(key);
  if (v == nullptr) throw NotFoundError("card has no property '" + std::string(key) + "'");
  if (const auto* i = std::get_if<std::int64_t>(v)) return *i;
  if (const auto* d = std::get_if<double>(v)) return static_cast<std::int64_t>(*d);
  if (const auto* b = std::get_if<bool>(v)) return *b ? 1 : 0;
  throw InvalidArgumentError("card property '" + std::string(key) + "' is not numeric");
}

std::string Card::get_string(std::string_view key) const {
  const PropertyValue* v = find(key);
  if (v == nullptr) throw NotFoundError("card has no property '" + std::string(key) + "'");
  if (const auto* s = std::get_if<std::string>(v)) return *s;
  throw InvalidArgumentError("card property '" + std::string(key) + "' is not a string");
}

Counter::Counter(int min, int max, int value) : min_(min), max_(max), value_(value) {
  if (min > max) throw InvalidArgumentError("counter min exceeds max");
  set(value);
}

bool Counter::set(int value) {
  value_ = std::clamp(value, min_, max_);
  return value_ != value;
}

bool Counter::change(int delta) {
  const long long target = static_cast<long long>(value_) + delta;
  const long long clamped = std::clamp<long long>(target, min_, max_);
  value_ = static_cast<int>(clamped);
  return clamped != target;
}

// ---------------------------------------------------------------------------
// Deck

ComponentId Deck::top() const {
  if (contents_.empty()) throw EmptyDeckError("deck");
  return contents_.front();
}

bool Deck::contains(ComponentId id) const {
  return std::find(contents_.begin(), contents_.end(), id) != contents_.end();
}

std::optional<std::size_t> Deck::index_of(ComponentId id) const {
  auto it = std::find(contents_.begin(), contents_.end(), id);
  if (it == contents_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - contents_.begin());
}

void Deck::add(ComponentId id) {
  if (contains(id)) throw RegistrationError("component " + std::to_string(id) + " already in deck");
  contents_.insert(contents_.begin(), id);
}

void Deck::add_bottom(ComponentId id) {
  if (contains(id)) throw RegistrationError("component " + std::to_string(id) + " already in deck");
  contents_.push_back(id);
}

void Deck::set(std::size_t i, ComponentId id) { contents_.at(i) = id; }

ComponentId Deck::draw(std::string_view deck_name) {
  if (contents_.empty()) throw EmptyDeckError(std::string(deck_name));
  const ComponentId id = contents_.front();
  contents_.erase(contents_.begin());
  return id;
}

bool Deck::remove(ComponentId id) {
  auto it = std::find(contents_.begin(), contents_.end(), id);
  if (it == contents_.end()) return false;
  contents_.erase(it);
  return true;
}

ComponentId Deck::remove_at(std::size_t i) {
  const ComponentId id = contents_.at(i);
  contents_.erase(contents_.begin() + static_cast<std::ptrdiff_t>(i));
  return id;
}

void Deck::shuffle(Rng& rng) { rng.shuffle(std::span<ComponentId>(contents_)); }

void Deck::shuffle(std::uint64_t seed) {
  Rng rng(seed);
  shuffle(rng);
}

// ---------------------------------------------------------------------------
// PartialObservableDeck

PartialObservableDeck::PartialObservableDeck(int n_players, VisibilityMask default_visibility)
    : n_players_(n_players), default_visibility_(default_visibility) {
  if (n_players < 0 || n_players > kMaxPlayers) throw InvalidArgumentError("bad player count for deck");
}

ComponentId PartialObservableDeck::top() const {
  if (contents_.empty()) throw EmptyDeckError("deck");
  return contents_.front();
}

bool PartialObservableDeck::contains(ComponentId id) const {
  return std::find(contents_.begin(), contents_.end(), id) != contents_.end();
}

std::optional<std::size_t> PartialObservableDeck::index_of(ComponentId id) const {
  auto it = std::find(contents_.begin(), contents_.end(), id);
  if (it == contents_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - contents_.begin());
}

bool PartialObservableDeck::is_visible(std::size_t i, int player) const {
  if (player < 0) return false;
  return (visibility_.at(i) & visible_to(player)) != 0;
}

void PartialObservableDeck::set_visibility(std::size_t i, int player, bool visible) {
  if (visible) {
    visibility_.at(i) |= visible_to(player);
  } else {
    visibility_.at(i) &= ~visible_to(player);
  }
}

void PartialObservableDeck::set_visibility_all(int player, bool visible) {
  for (std::size_t i = 0; i < visibility_.size(); ++i) set_visibility(i, player, visible);
}

void PartialObservableDeck::add(ComponentId id, VisibilityMask mask) {
  if (contains(id)) throw RegistrationError("component " + std::to_string(id) + " already in deck");
  contents_.insert(contents_.begin(), id);
  visibility_.insert(visibility_.begin(), mask);
}

void PartialObservableDeck::add_bottom(ComponentId id, VisibilityMask mask) {
  if (contains(id)) throw RegistrationError("component " + std::to_string(id) + " already in deck");
  contents_.push_back(id);
  visibility_.push_back(mask);
}

ComponentId PartialObservableDeck::draw(std::string_view deck_name) {
  if (contents_.empty()) throw EmptyDeckError(std::string(deck_name));
  return remove_at(0);
}

bool PartialObservableDeck::remove(ComponentId id) {
  auto idx = index_of(id);
  if (!idx) return false;
  remove_at(*idx);
  return true;
}

ComponentId PartialObservableDeck::remove_at(std::size_t i) {
  const ComponentId id = contents_.at(i);
  contents_.erase(contents_.begin() + static_cast<std::ptrdiff_t>(i));
  visibility_.erase(visibility_.begin() + static_cast<std::ptrdiff_t>(i));
  return id;
}

void PartialObservableDeck::clear() {
  contents_.clear();
  visibility_.clear();
}

void PartialObservableDeck::shuffle(Rng& rng) {
  for (std::size_t i = contents_.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform(i));
    std::swap(contents_[i - 1], contents_[j]);
    std::swap(visibility_[i - 1], visibility_[j]);
  }
}

// ---------------------------------------------------------------------------

GridBoard::GridBoard(int width, int height, std::int32_t fill)
    : width_(width), height_(height) {
  if (width < 1 || height < 1) throw InvalidArgumentError("grid board needs positive dimensions");
  cells_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

std::size_t GridBoard::index(int x, int y) const {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) throw InvalidArgumentError("grid cell out of range");
  return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
}

std::string_view kind_name(ComponentKind kind) {
  switch (kind) {
    case ComponentKind::kToken: return "token";
    case ComponentKind::kDie: return "die";
    case ComponentKind::kCard: return "card";
    case ComponentKind::kCounter: return "counter";
    case ComponentKind::kDeck: return "deck";
    case ComponentKind::kPartialObservableDeck: return "partial-observable-deck";
    case ComponentKind::kArea: return "area";
    case ComponentKind::kGridBoard: return "grid-board";
    case ComponentKind::kGraphBoard: return "graph-board";
    case ComponentKind::kBoardNode: return "board-node";
  }
  return "unknown";
}

bool Component::is_atomic() const {
  switch (kind()) {
    case ComponentKind::kToken:
    case ComponentKind::kDie:
    case ComponentKind::kCard:
    case ComponentKind::kCounter:
      return true;
    default:
      return false;
  }
}

std::span<const ComponentId> Component::children() const {
  switch (kind()) {
    case ComponentKind::kDeck: return as<Deck>().contents();
    case ComponentKind::kPartialObservableDeck: return as<PartialObservableDeck>().contents();
    case ComponentKind::kArea: return as<Area>().contents;
    case ComponentKind::kGraphBoard: return as<GraphBoard>().nodes;
    default: return {};
  }
}

}  // namespace tag
