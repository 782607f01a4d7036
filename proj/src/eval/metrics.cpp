#include "tag/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "tag/core/errors.hpp"
#include "tag/eval/parallel.hpp"

namespace tag {

void RunningStats::add(double x) {
  if (count == 0) {
    min = max = x;
  } else {
    min = std::min(min, x);
    max = std::max(max, x);
  }
  ++count;
  sum += x;
  sum_sq += x * x;
}

void RunningStats::merge(const RunningStats& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  count += other.count;
  sum += other.sum;
  sum_sq += other.sum_sq;
  min = std::min(min, other.min);
  max = std::max(max, other.max);
}

double RunningStats::stddev() const {
  if (count < 2) return 0.0;
  const double n = static_cast<double>(count);
  const double var = (sum_sq - sum * sum / n) / (n - 1.0);
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

int branching_factor(const GameState& state, const ForwardModel& fm, std::span<const ActionPtr> actions) {
  std::unordered_set<std::uint64_t> successors;
  const std::uint64_t seed = mix_seed(state.params().seed, static_cast<std::uint64_t>(state.tick()));
  for (const auto& a : actions) {
    auto next = state.copy();
    next->reseed(seed);
    fm.next(*next, *a);
    successors.insert(next->hash());
  }
  return static_cast<int>(successors.size());
}

void MetricsCollector::on_turn(const GameState& state, const GameState& observation,
                               std::span<const ActionPtr> actions) {
  const int player = state.current_player();
  const auto n_actions = static_cast<int>(actions.size());
  mu1_.add(n_actions);
  ++histogram_[n_actions];
  if (const int hand = state.hand_size(player); hand >= 0) by_hand_size_[hand].add(n_actions);
  if (options_.branching && forward_model_ != nullptr) mu2_.add(branching_factor(state, *forward_model_, actions));
  mu3_.add(static_cast<double>(state.registry().size()));
  const HiddenCount hidden = count_hidden(state, player);
  mu4_.add(hidden.atomic > 0 ? 100.0 * hidden.hidden / hidden.atomic : 0.0);
  mu7_.add(observation.score(player));
}

void MetricsCollector::on_game_end(const GameState& /*state*/, const GameResultRecord& record) {
  ++games_;
  decisions_.add(record.decisions);
  ticks_.add(record.ticks);
  rounds_.add(record.rounds);
  turns_.add(record.turns);
  if (record.turns > 0) apt_.add(static_cast<double>(record.ticks) / record.turns);
  wins_.resize(std::max(wins_.size(), record.results.size()), 0);
  bool any_win = false;
  for (std::size_t p = 0; p < record.results.size(); ++p) {
    if (record.results[p] == PlayerResult::kWin) {
      ++wins_[p];
      any_win = true;
    }
  }
  if (!any_win && std::find(record.results.begin(), record.results.end(), PlayerResult::kDraw) != record.results.end()) {
    ++draws_;
  }
}

void MetricsCollector::merge(const MetricsCollector& other) {
  mu1_.merge(other.mu1_);
  for (const auto& [k, v] : other.histogram_) histogram_[k] += v;
  for (const auto& [k, v] : other.by_hand_size_) by_hand_size_[k].merge(v);
  mu2_.merge(other.mu2_);
  mu3_.merge(other.mu3_);
  mu4_.merge(other.mu4_);
  mu7_.merge(other.mu7_);
  decisions_.merge(other.decisions_);
  ticks_.merge(other.ticks_);
  rounds_.merge(other.rounds_);
  turns_.merge(other.turns_);
  apt_.merge(other.apt_);
  wins_.resize(std::max(wins_.size(), other.wins_.size()), 0);
  for (std::size_t p = 0; p < other.wins_.size(); ++p) wins_[p] += other.wins_[p];
  draws_ += other.draws_;
  games_ += other.games_;
}

void MetricsCollector::fill(MetricsReport& r) const {
  r.n_games = static_cast<int>(games_);
  r.mu1_action_space = mu1_.mean();
  r.mu1_histogram = histogram_;
  r.mu1_by_hand_size.clear();
  r.hand_size_samples.clear();
  for (const auto& [k, v] : by_hand_size_) {
    r.mu1_by_hand_size[k] = v.mean();
    r.hand_size_samples[k] = v.count;
  }
  r.mu2_branching = mu2_.mean();
  r.mu3_state_size = mu3_.mean();
  r.mu4_hidden_percent = mu4_.mean();
  r.mu6_length = {decisions_.mean(), ticks_.mean(), rounds_.mean(), turns_.mean(), apt_.mean()};
  r.mu7_reward = {mu7_.min, mu7_.max, mu7_.mean(), mu7_.stddev()};
  r.wins = wins_;
  r.draws = draws_;
}

namespace {

template <class Map>
nlohmann::json pairs(const Map& m) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [k, v] : m) out.push_back({k, v});
  return out;
}

template <class V>
std::map<int, V> unpairs(const nlohmann::json& j) {
  std::map<int, V> out;
  for (const auto& kv : j) out[kv.at(0).get<int>()] = kv.at(1).get<V>();
  return out;
}

}  // namespace

nlohmann::json to_json(const MetricsReport& r) {
  return {
      {"game", r.game},
      {"nPlayers", r.n_players},
      {"nGames", r.n_games},
      {"agents", r.agents},
      {"seed", r.seed},
      {"mu1", {{"mean", r.mu1_action_space},
               {"histogram", pairs(r.mu1_histogram)},
               {"byHandSize", pairs(r.mu1_by_hand_size)},
               {"handSizeSamples", pairs(r.hand_size_samples)}}},
      {"mu2", {{"mean", r.mu2_branching}}},
      {"mu3", {{"mean", r.mu3_state_size}}},
      {"mu4", {{"meanPercent", r.mu4_hidden_percent}}},
      {"mu5", {{"setup", r.mu5_speed.setup},
               {"next", r.mu5_speed.next},
               {"actions", r.mu5_speed.actions},
               {"copy", r.mu5_speed.copy}}},
      {"mu6", {{"decisions", r.mu6_length.decisions},
               {"ticks", r.mu6_length.ticks},
               {"rounds", r.mu6_length.rounds},
               {"turns", r.mu6_length.turns},
               {"actionsPerTurn", r.mu6_length.actions_per_turn}}},
      {"mu7", {{"min", r.mu7_reward.min},
               {"max", r.mu7_reward.max},
               {"mean", r.mu7_reward.mean},
               {"stddev", r.mu7_reward.stddev}}},
      {"wins", r.wins},
      {"draws", r.draws},
  };
}

MetricsReport report_from_json(const nlohmann::json& j) {
  MetricsReport r;
  r.game = j.at("game").get<std::string>();
  r.n_players = j.at("nPlayers").get<int>();
  r.n_games = j.at("nGames").get<int>();
  r.agents = j.at("agents").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  const auto& mu1 = j.at("mu1");
  r.mu1_action_space = mu1.at("mean").get<double>();
  r.mu1_histogram = unpairs<std::int64_t>(mu1.at("histogram"));
  r.mu1_by_hand_size = unpairs<double>(mu1.at("byHandSize"));
  r.hand_size_samples = unpairs<std::int64_t>(mu1.at("handSizeSamples"));
  r.mu2_branching = j.at("mu2").at("mean").get<double>();
  r.mu3_state_size = j.at("mu3").at("mean").get<double>();
  r.mu4_hidden_percent = j.at("mu4").at("meanPercent").get<double>();
  const auto& mu5 = j.at("mu5");
  r.mu5_speed = {mu5.at("setup").get<double>(), mu5.at("next").get<double>(), mu5.at("actions").get<double>(),
                 mu5.at("copy").get<double>()};
  const auto& mu6 = j.at("mu6");
  r.mu6_length = {mu6.at("decisions").get<double>(), mu6.at("ticks").get<double>(), mu6.at("rounds").get<double>(),
                  mu6.at("turns").get<double>(), mu6.at("actionsPerTurn").get<double>()};
  const auto& mu7 = j.at("mu7");
  r.mu7_reward = {mu7.at("min").get<double>(), mu7.at("max").get<double>(), mu7.at("mean").get<double>(),
                  mu7.at("stddev").get<double>()};
  r.wins = j.at("wins").get<std::vector<std::int64_t>>();
  r.draws = j.at("draws").get<std::int64_t>();
  return r;
}

MetricsReport run_report(const GameRegistry& games, const ReportConfig& config) {
  const GameDescriptor& game = games.lookup(config.game);
  if (config.n_games <= 0) throw InvalidArgumentError("number of games must be positive");
  if (!game.supports(config.n_players)) {
    throw InvalidArgumentError(game.name + " supports " + std::to_string(game.min_players) + ".." +
                               std::to_string(game.max_players) + " players, got " +
                               std::to_string(config.n_players));
  }
  std::vector<AgentSpec> seats = config.agents.empty() ? std::vector<AgentSpec>{AgentSpec{"random", {}}} : config.agents;
  if (seats.size() == 1) seats.assign(static_cast<std::size_t>(config.n_players), seats.front());
  if (static_cast<int>(seats.size()) != config.n_players) {
    throw InvalidArgumentError("expected 1 or " + std::to_string(config.n_players) + " agent specs, got " +
                               std::to_string(seats.size()));
  }
  for (const auto& s : seats) {
    if (is_human_spec(s)) throw InvalidArgumentError("reports need AI agents, got '" + s.name + "'");
  }

  MetricsCollector total(config.metrics);
  parallel_ordered(
      static_cast<std::size_t>(config.n_games), config.jobs,
      [&](std::size_t i) {
        const std::uint64_t seed = mix_seed(config.seed, i);
        auto params = game.parameters(seed, nullptr, config.randomize_params);
        GameInstance instance = game.create(config.n_players, *params, config.core);
        std::vector<std::unique_ptr<Agent>> agents;
        std::vector<Agent*> raw;
        for (int seat = 0; seat < config.n_players; ++seat) {
          agents.push_back(make_agent(seats[static_cast<std::size_t>(seat)], {agent_seed(seed, seat)}));
          raw.push_back(agents.back().get());
        }
        MetricsCollector collector(config.metrics);
        collector.set_forward_model(instance.forward_model);
        Game g(std::move(instance.state), instance.forward_model, config.core);
        g.run(raw, &collector);
        return collector;
      },
      [&](std::size_t, MetricsCollector&& c) { total.merge(c); });

  MetricsReport report;
  report.game = game.name;
  report.n_players = config.n_players;
  report.agents = config.agents.empty() ? "random" : [&] {
    std::string out;
    for (std::size_t i = 0; i < config.agents.size(); ++i) out += (i ? "," : "") + config.agents[i].to_string();
    return out;
  }();
  report.seed = config.seed;
  total.fill(report);
  if (config.measure_speed) report.mu5_speed = measure_speed(game, config.n_players, config.seed, config.core, config.speed);
  return report;
}

}  // namespace tag
