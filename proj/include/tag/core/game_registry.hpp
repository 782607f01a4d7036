#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "tag/core/forward_model.hpp"
#include "tag/core/game_state.hpp"
#include "tag/core/parameters.hpp"

namespace tag {

enum class Category { kSimple, kStrategy, kCards, kAbstract, kFamily };
enum class Mechanic {
  kPatternBuilding,
  kHandManagement,
  kPlayerElimination,
  kPointsSystem,
  kTakeThat,
  kDeduction,
  kCooperative,
};

std::string_view to_string(Category c);
std::string_view to_string(Mechanic m);
std::optional<Category> parse_category(std::string_view s);
std::optional<Mechanic> parse_mechanic(std::string_view s);

/// A freshly built, not yet set up, game.
struct GameInstance {
  std::shared_ptr<const ForwardModel> forward_model;
  std::unique_ptr<GameState> state;
};

class GameDescriptor {
 public:
  std::string name;
  int min_players = 1;
  int max_players = 1;
  std::vector<Category> categories;
  std::vector<Mechanic> mechanics;
  std::function<std::unique_ptr<GameParameters>()> make_parameters;
  std::function<std::unique_ptr<GameState>(std::shared_ptr<const GameParameters>, int, const CoreConfig&)> make_state;
  std::function<std::shared_ptr<const ForwardModel>()> make_forward_model;

  bool supports(int n_players) const { return n_players >= min_players && n_players <= max_players; }
  bool has(Category c) const;
  bool has(Mechanic m) const;

  /// Default parameters with the given seed, optional JSON overrides, and
  /// optionally randomized rules.
  std::unique_ptr<GameParameters> parameters(std::uint64_t seed, const nlohmann::json* overrides = nullptr,
                                             bool randomize = false) const;
  /// Throws InvalidArgumentError on unsupported player counts.
  GameInstance create(int n_players, const GameParameters& params, const CoreConfig& config) const;
};

/// Searchable set of known games. Lookup ignores case.
class GameRegistry {
 public:
  void add(GameDescriptor descriptor);
  /// Throws NotFoundError listing the known games.
  const GameDescriptor& lookup(std::string_view name) const;
  const GameDescriptor* find(std::string_view name) const;
  std::vector<const GameDescriptor*> filter(std::optional<Category> category,
                                            std::optional<Mechanic> mechanic = std::nullopt) const;
  std::vector<std::string> names() const;

 private:
  std::vector<GameDescriptor> games_;
};

}  // namespace tag
