#include "tag/service/observation_view.hpp"

#include "tag/core/json_loader.hpp"

namespace tag {

namespace {

bool element_shown(const PartialObservableDeck& deck, std::size_t i, int viewer, int n_players) {
  if (viewer == kNoPlayer) return (deck.visibility(i) & visible_to_all(n_players)) == visible_to_all(n_players);
  return deck.is_visible(i, viewer);
}

nlohmann::json properties_view(const Properties& props) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [k, v] : props) out[k] = property_to_json(v);
  return out;
}

}  // namespace

nlohmann::json component_view(const GameState& state, ComponentId id, int viewer) {
  const Component& c = state.registry().at(id);
  nlohmann::json out = {{"id", c.id}, {"kind", std::string(kind_name(c.kind()))}, {"name", c.name}};
  if (c.owner != kNoPlayer) out["owner"] = c.owner;
  std::visit(
      [&](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, Card>) {
          out["properties"] = properties_view(body.properties());
        } else if constexpr (std::is_same_v<T, Counter>) {
          out["min"] = body.min();
          out["max"] = body.max();
          out["value"] = body.value();
        } else if constexpr (std::is_same_v<T, Die>) {
          out["sides"] = body.sides();
          out["value"] = body.value();
        } else if constexpr (std::is_same_v<T, Token>) {
          out["tokenKind"] = body.kind;
          if (body.position) out["position"] = *body.position;
        } else if constexpr (std::is_same_v<T, Deck>) {
          nlohmann::json contents = nlohmann::json::array();
          for (ComponentId child : body.contents()) contents.push_back(component_view(state, child, viewer));
          out["size"] = body.size();
          out["contents"] = contents;
        } else if constexpr (std::is_same_v<T, PartialObservableDeck>) {
          nlohmann::json contents = nlohmann::json::array();
          for (std::size_t i = 0; i < body.size(); ++i) {
            if (element_shown(body, i, viewer, state.n_players())) {
              contents.push_back(component_view(state, body.at(i), viewer));
            } else {
              contents.push_back({{"hidden", true}});
            }
          }
          out["size"] = body.size();
          out["contents"] = contents;
        } else if constexpr (std::is_same_v<T, Area>) {
          nlohmann::json contents = nlohmann::json::array();
          for (ComponentId child : body.contents) contents.push_back(component_view(state, child, viewer));
          out["contents"] = contents;
        } else if constexpr (std::is_same_v<T, GridBoard>) {
          out["width"] = body.width();
          out["height"] = body.height();
          out["cells"] = std::vector<std::int32_t>(body.cells().begin(), body.cells().end());
        } else if constexpr (std::is_same_v<T, GraphBoard>) {
          out["nodes"] = body.nodes;
        } else if constexpr (std::is_same_v<T, BoardNode>) {
          out["neighbours"] = body.neighbours;
        }
      },
      c.body);
  return out;
}

nlohmann::json table_view(const GameState& state, int viewer) {
  nlohmann::json components = nlohmann::json::array();
  for (ComponentId id : state.top_level_components()) components.push_back(component_view(state, id, viewer));
  std::vector<std::string> results;
  for (auto r : state.results()) results.emplace_back(to_string(r));
  return {
      {"game", std::string(state.game_name())},
      {"nPlayers", state.n_players()},
      {"tick", state.tick()},
      {"round", state.turn_order().round_counter()},
      {"phase", state.phase_name()},
      {"status", std::string(to_string(state.status()))},
      {"currentPlayer", state.current_player()},
      {"results", results},
      {"public", state.public_info()},
      {"components", components},
  };
}

nlohmann::json observation_view(const GameState& observation, int viewer, std::span<const OfferedAction> actions) {
  nlohmann::json view = table_view(observation, viewer);
  view["playerId"] = viewer;
  view["yourTurn"] = !observation.is_terminal() && observation.current_player() == viewer && !actions.empty();
  view["score"] = observation.score(viewer);
  nlohmann::json offered = nlohmann::json::array();
  for (const auto& a : actions) offered.push_back({{"id", a.id}, {"label", a.label}});
  view["availableActions"] = offered;
  return view;
}

}  // namespace tag
