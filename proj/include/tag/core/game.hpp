#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "tag/core/agent.hpp"
#include "tag/core/forward_model.hpp"
#include "tag/core/game_state.hpp"

namespace tag {

class GameDescriptor;

struct LogEntry {
  int tick = 0;
  int player = 0;
  std::string action;

  bool operator==(const LogEntry&) const = default;
};

/// Outcome of one finished game.
struct GameResultRecord {
  std::string game;
  std::uint64_t seed = 0;
  GameStatus status = GameStatus::kOngoing;
  std::vector<PlayerResult> results;
  int ticks = 0;      ///< forward-model next calls
  int decisions = 0;  ///< agent queries with more than one option
  int rounds = 0;     ///< completed turn-order rounds
  int turns = 0;      ///< completed player turns
  std::vector<LogEntry> log;
};

/// Hooks for metric collection.
class GameObserver {
 public:
  virtual ~GameObserver() = default;
  /// Before the acting player picks; `observation` is that player's view.
  virtual void on_turn(const GameState& /*state*/, const GameState& /*observation*/,
                       std::span<const ActionPtr> /*actions*/) {}
  virtual void on_game_end(const GameState& /*state*/, const GameResultRecord& /*record*/) {}
};

/// One pending choice: who acts, what they see, and what they may do.
struct TurnContext {
  int player = kNoPlayer;
  std::unique_ptr<GameState> observation;
  std::vector<ActionPtr> actions;

  bool is_decision() const { return actions.size() > 1; }
};

/// The standard game loop, also usable one turn at a time.
class Game {
 public:
  Game(std::unique_ptr<GameState> state, std::shared_ptr<const ForwardModel> forward_model, CoreConfig config);

  void setup();
  bool is_over() const { return state_->is_terminal(); }

  TurnContext begin_turn() const;
  /// Checks `chosen` against the offered actions and applies it. An illegal
  /// choice disqualifies the player and is replaced by a random legal action
  /// when configured, otherwise raises IllegalActionError.
  void complete_turn(const TurnContext& turn, const ActionPtr& chosen);

  /// Plays to the end. Agents are indexed by player.
  GameResultRecord run(std::span<Agent* const> agents, GameObserver* observer = nullptr,
                       std::ostream* verbose_log = nullptr);

  const GameState& state() const { return *state_; }
  std::shared_ptr<const ForwardModel> forward_model() const { return forward_model_; }
  const CoreConfig& config() const { return config_; }
  GameResultRecord record() const;
  int decisions() const { return decisions_; }
  const std::vector<LogEntry>& log() const { return log_; }

 private:
  std::unique_ptr<GameState> state_;
  std::shared_ptr<const ForwardModel> forward_model_;
  CoreConfig config_;
  Rng referee_rng_;
  int decisions_ = 0;
  std::vector<LogEntry> log_;
  std::set<int> disqualified_;
  std::ostream* verbose_log_ = nullptr;
};

/// Builds the named game for `agents.size()` players and plays it out.
GameResultRecord run_game(const GameDescriptor& game, std::span<Agent* const> agents, const GameParameters& params,
                          const CoreConfig& config, GameObserver* observer = nullptr,
                          std::ostream* verbose_log = nullptr);

}  // namespace tag
