#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "tag/agents/agent_spec.hpp"
#include "tag/core/game_registry.hpp"
#include "tag/core/types.hpp"

namespace tag {

struct PairRecord {
  int wins = 0;
  int draws = 0;
  int losses = 0;

  int games() const { return wins + draws + losses; }
  double points() const { return wins + 0.5 * draws; }
  bool operator==(const PairRecord&) const = default;
};

struct TournamentConfig {
  std::vector<AgentSpec> agents;
  std::vector<std::string> games;
  int repetitions = 10;  ///< games per pairing, seating and game
  std::uint64_t seed = 0;
  int jobs = 1;
  CoreConfig core;
  bool randomize_params = false;
};

struct TournamentGame {
  std::string game;
  std::uint64_t seed = 0;
  std::vector<int> seats;  ///< agent index per player
  std::vector<PlayerResult> results;

  bool operator==(const TournamentGame&) const = default;
};

/// Round robin between every pair of agents, in both seatings, on two-player
/// tables. Win = 1 point, draw = 0.5.
struct TournamentResult {
  std::vector<std::string> agents;
  std::vector<std::string> games;
  /// matrix[i][j]: agent i's record against agent j.
  std::vector<std::vector<PairRecord>> matrix;
  std::vector<double> points;
  std::vector<TournamentGame> log;
  std::vector<std::string> warnings;

  bool operator==(const TournamentResult&) const = default;
};

/// Games that cannot seat two players are skipped with a warning.
TournamentResult run_tournament(const GameRegistry& registry, const TournamentConfig& config);

nlohmann::json to_json(const TournamentResult& result);
std::string tournament_table(const TournamentResult& result);

/// Two-sided exact binomial test of k successes in n trials at rate p.
double binomial_two_sided_p(int k, int n, double p = 0.5);

}  // namespace tag
