#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "tag/agents/agent_spec.hpp"
#include "tag/core/game.hpp"
#include "tag/core/game_registry.hpp"
#include "tag/eval/speed.hpp"

namespace tag {

/// Running mean / min / max / variance of a stream of doubles.
struct RunningStats {
  std::int64_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;
  double min = 0.0;
  double max = 0.0;

  void add(double x);
  void merge(const RunningStats& other);
  double mean() const { return count ? sum / static_cast<double>(count) : 0.0; }
  double stddev() const;

  bool operator==(const RunningStats&) const = default;
};

struct LengthStats {
  double decisions = 0.0;
  double ticks = 0.0;
  double rounds = 0.0;
  double turns = 0.0;
  double actions_per_turn = 0.0;

  bool operator==(const LengthStats&) const = default;
};

struct RewardStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double stddev = 0.0;

  bool operator==(const RewardStats&) const = default;
};

/// Aggregated measures over a batch of games. μ1-μ4 and μ7 are sampled at
/// every tick; μ6 is per game.
struct MetricsReport {
  std::string game;
  int n_players = 0;
  int n_games = 0;
  std::string agents;
  std::uint64_t seed = 0;

  double mu1_action_space = 0.0;
  std::map<int, std::int64_t> mu1_histogram;
  /// Mean action-space size keyed by the acting player's hand size.
  std::map<int, double> mu1_by_hand_size;
  std::map<int, std::int64_t> hand_size_samples;
  double mu2_branching = 0.0;
  double mu3_state_size = 0.0;
  double mu4_hidden_percent = 0.0;
  SpeedReport mu5_speed;
  LengthStats mu6_length;
  RewardStats mu7_reward;
  /// Games won per seat.
  std::vector<std::int64_t> wins;
  std::int64_t draws = 0;

  bool operator==(const MetricsReport&) const = default;
};

nlohmann::json to_json(const MetricsReport& r);
MetricsReport report_from_json(const nlohmann::json& j);

struct MetricsOptions {
  bool branching = true;  ///< μ2 costs one copy and next per offered action
};

/// Accumulates the per-tick and per-game measures of one or more games.
class MetricsCollector final : public GameObserver {
 public:
  explicit MetricsCollector(MetricsOptions options = {}) : options_(options) {}

  /// Needed for μ2; without one the branching factor is not sampled.
  void set_forward_model(std::shared_ptr<const ForwardModel> fm) { forward_model_ = std::move(fm); }

  void on_turn(const GameState& state, const GameState& observation, std::span<const ActionPtr> actions) override;
  void on_game_end(const GameState& state, const GameResultRecord& record) override;
  /// Appends another collector's samples; merge order fixes the float sums.
  void merge(const MetricsCollector& other);
  /// Fills every field except the identification and μ5.
  void fill(MetricsReport& report) const;

  std::int64_t samples() const { return mu1_.count; }
  std::int64_t games() const { return games_; }

 private:
  MetricsOptions options_;
  std::shared_ptr<const ForwardModel> forward_model_;
  RunningStats mu1_;
  std::map<int, std::int64_t> histogram_;
  std::map<int, RunningStats> by_hand_size_;
  RunningStats mu2_;
  RunningStats mu3_;
  RunningStats mu4_;
  RunningStats mu7_;
  RunningStats decisions_;
  RunningStats ticks_;
  RunningStats rounds_;
  RunningStats turns_;
  RunningStats apt_;
  std::vector<std::int64_t> wins_;
  std::int64_t draws_ = 0;
  std::int64_t games_ = 0;
};

/// Number of distinct successor states, one sampled `next` per action under
/// a seed fixed by the state's tick.
int branching_factor(const GameState& state, const ForwardModel& fm, std::span<const ActionPtr> actions);

struct ReportConfig {
  std::string game;
  int n_players = 2;
  int n_games = 1000;
  std::vector<AgentSpec> agents;  ///< one spec, repeated for every seat, or one per seat
  std::uint64_t seed = 0;
  int jobs = 1;
  CoreConfig core;
  bool randomize_params = false;
  MetricsOptions metrics;
  bool measure_speed = true;
  SpeedConfig speed;
};

/// Plays `n_games` games (seed of game i = mix_seed(seed, i)) and aggregates.
MetricsReport run_report(const GameRegistry& games, const ReportConfig& config);

}  // namespace tag
