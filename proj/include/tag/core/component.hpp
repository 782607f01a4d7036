#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tag/core/rng.hpp"

namespace tag {

using ComponentId = std::int32_t;
inline constexpr ComponentId kNoComponent = -1;
inline constexpr int kNoPlayer = -1;

using PropertyValue = std::variant<bool, std::int64_t, double, std::string>;
using Properties = std::map<std::string, PropertyValue, std::less<>>;

struct Token {
  std::string kind;
  std::optional<int> position;

  bool operator==(const Token&) const = default;
};

class Die {
 public:
  explicit Die(int sides = 6, int value = 1);

  int sides() const { return sides_; }
  int value() const { return value_; }
  void set_value(int value);
  int roll(Rng& rng);

  bool operator==(const Die&) const = default;

 private:
  int sides_;
  int value_;
};

/// Cards carry immutable properties; copies share the property map.
class Card {
 public:
  Card() : properties_(std::make_shared<const Properties>()) {}
  explicit Card(Properties properties)
      : properties_(std::make_shared<const Properties>(std::move(properties))) {}

  const Properties& properties() const { return *properties_; }
  const PropertyValue* find(std::string_view key) const;
  std::int64_t get_int(std::string_view key) const;
  std::string get_string(std::string_view key) const;

  bool operator==(const Card& other) const { return properties() == other.properties(); }

 private:
  std::shared_ptr<const Properties> properties_;
};

/// Integer counter bounded by [min, max], both inclusive.
class Counter {
 public:
  Counter(int min = 0, int max = 0, int value = 0);

  int min() const { return min_; }
  int max() const { return max_; }
  int value() const { return value_; }

  /// Adds delta and clamps into range. Returns true when clamping happened.
  bool change(int delta);
  /// Sets the value, clamping into range. Returns true when clamping happened.
  bool set(int value);
  bool is_minimum() const { return value_ == min_; }
  bool is_maximum() const { return value_ == max_; }

  bool operator==(const Counter&) const = default;

 private:
  int min_;
  int max_;
  int value_;
};

/// Ordered collection of component IDs. Index 0 is the top of the deck.
class Deck {
 public:
  Deck() = default;

  std::size_t size() const { return contents_.size(); }
  bool empty() const { return contents_.empty(); }
  std::span<const ComponentId> contents() const { return contents_; }
  ComponentId at(std::size_t i) const { return contents_.at(i); }
  ComponentId top() const;
  bool contains(ComponentId id) const;
  std::optional<std::size_t> index_of(ComponentId id) const;

  /// Adds to the top. Throws on duplicate IDs.
  void add(ComponentId id);
  void add_bottom(ComponentId id);
  void set(std::size_t i, ComponentId id);
  /// Removes and returns the top element. Throws EmptyDeckError when empty.
  ComponentId draw(std::string_view deck_name = "deck");
  bool remove(ComponentId id);
  ComponentId remove_at(std::size_t i);
  void clear() { contents_.clear(); }
  void shuffle(Rng& rng);
  void shuffle(std::uint64_t seed);

  bool operator==(const Deck&) const = default;

 private:
  std::vector<ComponentId> contents_;
};

/// One bit per player.
using VisibilityMask = std::uint32_t;
inline constexpr int kMaxPlayers = 32;

inline constexpr VisibilityMask visible_to(int player) {
  return player >= 0 ? VisibilityMask{1} << player : VisibilityMask{0};
}
inline constexpr VisibilityMask visible_to_all(int n_players) {
  return n_players >= kMaxPlayers ? ~VisibilityMask{0} : (VisibilityMask{1} << n_players) - 1;
}

/// Deck whose elements carry per-player visibility.
class PartialObservableDeck {
 public:
  PartialObservableDeck(int n_players = 0, VisibilityMask default_visibility = 0);

  int n_players() const { return n_players_; }
  std::size_t size() const { return contents_.size(); }
  bool empty() const { return contents_.empty(); }
  std::span<const ComponentId> contents() const { return contents_; }
  ComponentId at(std::size_t i) const { return contents_.at(i); }
  ComponentId top() const;
  bool contains(ComponentId id) const;
  std::optional<std::size_t> index_of(ComponentId id) const;

  VisibilityMask default_visibility() const { return default_visibility_; }
  void set_default_visibility(VisibilityMask mask) { default_visibility_ = mask; }
  VisibilityMask visibility(std::size_t i) const { return visibility_.at(i); }
  bool is_visible(std::size_t i, int player) const;
  void set_visibility(std::size_t i, int player, bool visible);
  void set_visibility_mask(std::size_t i, VisibilityMask mask) { visibility_.at(i) = mask; }
  /// Opens or closes every element to one player.
  void set_visibility_all(int player, bool visible);

  void add(ComponentId id) { add(id, default_visibility_); }
  void add(ComponentId id, VisibilityMask mask);
  void add_bottom(ComponentId id, VisibilityMask mask);
  void set(std::size_t i, ComponentId id) { contents_.at(i) = id; }
  ComponentId draw(std::string_view deck_name = "deck");
  bool remove(ComponentId id);
  ComponentId remove_at(std::size_t i);
  void clear();
  /// Shuffles contents together with their visibility.
  void shuffle(Rng& rng);

  bool operator==(const PartialObservableDeck&) const = default;

 private:
  std::vector<ComponentId> contents_;
  std::vector<VisibilityMask> visibility_;
  int n_players_;
  VisibilityMask default_visibility_;
};

struct Area {
  std::vector<ComponentId> contents;

  bool operator==(const Area&) const = default;
};

/// Width x height grid of integer cell values (meaning is game-defined).
class GridBoard {
 public:
  GridBoard(int width = 1, int height = 1, std::int32_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::int32_t at(int x, int y) const { return cells_.at(index(x, y)); }
  void set(int x, int y, std::int32_t value) { cells_.at(index(x, y)) = value; }
  std::span<const std::int32_t> cells() const { return cells_; }

  bool operator==(const GridBoard&) const = default;

 private:
  std::size_t index(int x, int y) const;

  int width_;
  int height_;
  std::vector<std::int32_t> cells_;
};

struct BoardNode {
  std::vector<ComponentId> neighbours;

  bool operator==(const BoardNode&) const = default;
};

struct GraphBoard {
  std::vector<ComponentId> nodes;

  bool operator==(const GraphBoard&) const = default;
};

using ComponentBody = std::variant<Token, Die, Card, Counter, Deck, PartialObservableDeck, Area,
                                   GridBoard, GraphBoard, BoardNode>;

enum class ComponentKind {
  kToken,
  kDie,
  kCard,
  kCounter,
  kDeck,
  kPartialObservableDeck,
  kArea,
  kGridBoard,
  kGraphBoard,
  kBoardNode,
};

std::string_view kind_name(ComponentKind kind);

struct Component {
  ComponentId id = kNoComponent;
  int owner = kNoPlayer;
  std::string name;
  ComponentBody body;

  ComponentKind kind() const { return static_cast<ComponentKind>(body.index()); }
  /// Cards, dice, tokens and counters. Containers and boards are not atomic.
  bool is_atomic() const;
  /// Component IDs held by decks, areas and graph boards.
  std::span<const ComponentId> children() const;

  template <class T>
  T& as() { return std::get<T>(body); }
  template <class T>
  const T& as() const { return std::get<T>(body); }

  bool operator==(const Component&) const = default;
};

}  // namespace tag
