#include "tag/eval/tournament.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "tag/core/errors.hpp"
#include "tag/core/game.hpp"
#include "tag/eval/parallel.hpp"

namespace tag {

TournamentResult run_tournament(const GameRegistry& registry, const TournamentConfig& config) {
  if (config.agents.size() < 2) throw InvalidArgumentError("a tournament needs at least two agents");
  if (config.repetitions < 1) throw InvalidArgumentError("repetitions must be positive");
  for (const auto& a : config.agents) {
    if (is_human_spec(a)) throw InvalidArgumentError("tournaments need AI agents, got '" + a.name + "'");
  }

  TournamentResult result;
  const std::size_t n = config.agents.size();
  for (const auto& a : config.agents) result.agents.push_back(a.to_string());
  result.matrix.assign(n, std::vector<PairRecord>(n));
  result.points.assign(n, 0.0);

  std::vector<const GameDescriptor*> games;
  for (const auto& name : config.games) {
    const GameDescriptor& g = registry.lookup(name);
    if (!g.supports(2)) {
      result.warnings.push_back("skipping " + g.name + ": it cannot seat two players");
      continue;
    }
    games.push_back(&g);
    result.games.push_back(g.name);
  }

  std::vector<TournamentGame> schedule;
  std::vector<const GameDescriptor*> schedule_game;
  for (const auto* g : games) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        for (const auto& seats : {std::vector<int>{int(i), int(j)}, std::vector<int>{int(j), int(i)}}) {
          for (int r = 0; r < config.repetitions; ++r) {
            TournamentGame tg;
            tg.game = g->name;
            tg.seed = mix_seed(config.seed, schedule.size());
            tg.seats = seats;
            schedule.push_back(std::move(tg));
            schedule_game.push_back(g);
          }
        }
      }
    }
  }

  parallel_ordered(
      schedule.size(), config.jobs,
      [&](std::size_t k) {
        const TournamentGame& tg = schedule[k];
        const GameDescriptor& game = *schedule_game[k];
        auto params = game.parameters(tg.seed, nullptr, config.randomize_params);
        std::vector<std::unique_ptr<Agent>> agents;
        std::vector<Agent*> raw;
        for (std::size_t seat = 0; seat < tg.seats.size(); ++seat) {
          const auto& spec = config.agents[static_cast<std::size_t>(tg.seats[seat])];
          agents.push_back(make_agent(spec, {agent_seed(tg.seed, static_cast<int>(seat))}));
          raw.push_back(agents.back().get());
        }
        return run_game(game, raw, *params, config.core).results;
      },
      [&](std::size_t k, std::vector<PlayerResult>&& results) {
        TournamentGame tg = schedule[k];
        tg.results = std::move(results);
        const auto a = static_cast<std::size_t>(tg.seats[0]);
        const auto b = static_cast<std::size_t>(tg.seats[1]);
        const bool a_won = tg.results[0] == PlayerResult::kWin;
        const bool b_won = tg.results[1] == PlayerResult::kWin;
        if (a_won && !b_won) {
          ++result.matrix[a][b].wins;
          ++result.matrix[b][a].losses;
          result.points[a] += 1.0;
        } else if (b_won && !a_won) {
          ++result.matrix[b][a].wins;
          ++result.matrix[a][b].losses;
          result.points[b] += 1.0;
        } else {
          ++result.matrix[a][b].draws;
          ++result.matrix[b][a].draws;
          result.points[a] += 0.5;
          result.points[b] += 0.5;
        }
        result.log.push_back(std::move(tg));
      });
  return result;
}

nlohmann::json to_json(const TournamentResult& r) {
  nlohmann::json matrix = nlohmann::json::array();
  for (const auto& row : r.matrix) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : row) cells.push_back({{"wins", c.wins}, {"draws", c.draws}, {"losses", c.losses}});
    matrix.push_back(cells);
  }
  nlohmann::json log = nlohmann::json::array();
  for (const auto& g : r.log) {
    nlohmann::json results = nlohmann::json::array();
    for (auto res : g.results) results.push_back(std::string(to_string(res)));
    log.push_back({{"game", g.game}, {"seed", g.seed}, {"seats", g.seats}, {"results", results}});
  }
  return {{"agents", r.agents}, {"games", r.games},     {"matrix", matrix},
          {"points", r.points}, {"warnings", r.warnings}, {"log", log}};
}

std::string tournament_table(const TournamentResult& r) {
  std::ostringstream out;
  std::size_t width = 6;
  for (const auto& a : r.agents) width = std::max(width, a.size());
  out << std::left << std::setw(static_cast<int>(width)) << "agent";
  for (std::size_t j = 0; j < r.agents.size(); ++j) out << "  " << std::setw(12) << ("vs " + std::to_string(j));
  out << "  points\n";
  for (std::size_t i = 0; i < r.agents.size(); ++i) {
    out << std::setw(static_cast<int>(width)) << r.agents[i];
    for (std::size_t j = 0; j < r.agents.size(); ++j) {
      const auto& c = r.matrix[i][j];
      const std::string cell =
          i == j ? "-" : std::to_string(c.wins) + "/" + std::to_string(c.draws) + "/" + std::to_string(c.losses);
      out << "  " << std::setw(12) << cell;
    }
    out << "  " << r.points[i] << "\n";
  }
  out << "(cells are wins/draws/losses of the row agent)\n";
  for (const auto& w : r.warnings) out << "warning: " << w << "\n";
  return out.str();
}

double binomial_two_sided_p(int k, int n, double p) {
  if (n <= 0) return 1.0;
  if (k < 0 || k > n || p <= 0.0 || p >= 1.0) throw InvalidArgumentError("binomial test arguments out of range");
  auto log_pmf = [&](int i) {
    return std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0) + i * std::log(p) +
           (n - i) * std::log1p(-p);
  };
  const double observed = log_pmf(k);
  double total = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double lp = log_pmf(i);
    if (lp <= observed + 1e-9) total += std::exp(lp);
  }
  return std::min(1.0, total);
}

}  // namespace tag
