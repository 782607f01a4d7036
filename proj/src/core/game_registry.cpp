#include "tag/core/game_registry.hpp"

#include <algorithm>
#include <cctype>

#include "tag/core/errors.hpp"

namespace tag {

namespace {

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

constexpr Category kCategories[] = {Category::kSimple, Category::kStrategy, Category::kCards, Category::kAbstract,
                                    Category::kFamily};
constexpr Mechanic kMechanics[] = {Mechanic::kPatternBuilding, Mechanic::kHandManagement,
                                   Mechanic::kPlayerElimination, Mechanic::kPointsSystem,
                                   Mechanic::kTakeThat,        Mechanic::kDeduction,
                                   Mechanic::kCooperative};

}  // namespace

std::string_view to_string(Category c) {
  switch (c) {
    case Category::kSimple: return "Simple";
    case Category::kStrategy: return "Strategy";
    case Category::kCards: return "Cards";
    case Category::kAbstract: return "Abstract";
    case Category::kFamily: return "Family";
  }
  return "?";
}

std::string_view to_string(Mechanic m) {
  switch (m) {
    case Mechanic::kPatternBuilding: return "PatternBuilding";
    case Mechanic::kHandManagement: return "HandManagement";
    case Mechanic::kPlayerElimination: return "PlayerElimination";
    case Mechanic::kPointsSystem: return "PointsSystem";
    case Mechanic::kTakeThat: return "TakeThat";
    case Mechanic::kDeduction: return "Deduction";
    case Mechanic::kCooperative: return "Cooperative";
  }
  return "?";
}

std::optional<Category> parse_category(std::string_view s) {
  for (auto c : kCategories) {
    if (iequals(to_string(c), s)) return c;
  }
  return std::nullopt;
}

std::optional<Mechanic> parse_mechanic(std::string_view s) {
  for (auto m : kMechanics) {
    if (iequals(to_string(m), s)) return m;
  }
  return std::nullopt;
}

bool GameDescriptor::has(Category c) const {
  return std::find(categories.begin(), categories.end(), c) != categories.end();
}

bool GameDescriptor::has(Mechanic m) const {
  return std::find(mechanics.begin(), mechanics.end(), m) != mechanics.end();
}

std::unique_ptr<GameParameters> GameDescriptor::parameters(std::uint64_t seed, const nlohmann::json* overrides,
                                                           bool randomize) const {
  auto params = make_parameters();
  if (overrides != nullptr) params->from_json(*overrides);
  params->seed = seed;
  if (randomize) {
    Rng rng(mix_seed(seed, 0x7a6eULL));
    params->randomize(rng);
  }
  params->validate();
  return params;
}

GameInstance GameDescriptor::create(int n_players, const GameParameters& params, const CoreConfig& config) const {
  if (!supports(n_players)) {
    throw InvalidArgumentError(name + " supports " + std::to_string(min_players) + ".." +
                               std::to_string(max_players) + " players, got " + std::to_string(n_players));
  }
  params.validate();
  std::shared_ptr<const GameParameters> shared = params.clone();
  return GameInstance{make_forward_model(), make_state(std::move(shared), n_players, config)};
}

void GameRegistry::add(GameDescriptor descriptor) {
  if (find(descriptor.name) != nullptr) throw RegistrationError("game '" + descriptor.name + "' already registered");
  games_.push_back(std::move(descriptor));
}

const GameDescriptor* GameRegistry::find(std::string_view name) const {
  for (const auto& g : games_) {
    if (iequals(g.name, name)) return &g;
  }
  return nullptr;
}

const GameDescriptor& GameRegistry::lookup(std::string_view name) const {
  if (const auto* g = find(name)) return *g;
  std::string known;
  for (const auto& g : games_) known += (known.empty() ? "" : ", ") + g.name;
  throw NotFoundError("unknown game '" + std::string(name) + "'; known games: " + known);
}

std::vector<const GameDescriptor*> GameRegistry::filter(std::optional<Category> category,
                                                        std::optional<Mechanic> mechanic) const {
  std::vector<const GameDescriptor*> out;
  for (const auto& g : games_) {
    if (category && !g.has(*category)) continue;
    if (mechanic && !g.has(*mechanic)) continue;
    out.push_back(&g);
  }
  return out;
}

std::vector<std::string> GameRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& g : games_) out.push_back(g.name);
  return out;
}

}  // namespace tag
