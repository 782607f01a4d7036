#include "tag/core/game.hpp"

#include <algorithm>
#include <ostream>

#include "tag/core/errors.hpp"
#include "tag/core/game_registry.hpp"

namespace tag {

Game::Game(std::unique_ptr<GameState> state, std::shared_ptr<const ForwardModel> forward_model, CoreConfig config)
    : state_(std::move(state)),
      forward_model_(std::move(forward_model)),
      config_(config),
      referee_rng_(mix_seed(state_->params().seed, 0x5eedULL)) {}

void Game::setup() {
  forward_model_->setup(*state_);
  decisions_ = 0;
  log_.clear();
  disqualified_.clear();
}

TurnContext Game::begin_turn() const {
  TurnContext turn;
  turn.player = state_->current_player();
  turn.observation = state_->copy(turn.player);
  turn.actions = forward_model_->compute_available_actions(*state_);
  if (turn.actions.empty()) {
    throw TagError(std::string(state_->game_name()) + ": no actions available in an ongoing game");
  }
  return turn;
}

void Game::complete_turn(const TurnContext& turn, const ActionPtr& chosen) {
  if (turn.is_decision()) ++decisions_;
  ActionPtr applied;
  if (chosen) {
    auto it = std::find_if(turn.actions.begin(), turn.actions.end(),
                           [&](const ActionPtr& a) { return a->equals(*chosen); });
    if (it != turn.actions.end()) applied = *it;
  }
  if (!applied) {
    const std::string what = chosen ? chosen->to_string() : std::string("<none>");
    if (!config_.disqualify_on_illegal_action) {
      throw IllegalActionError("player " + std::to_string(turn.player) + " chose an illegal action: " + what);
    }
    disqualified_.insert(turn.player);
    applied = turn.actions[referee_rng_.uniform(turn.actions.size())];
  }
  log_.push_back({state_->tick(), turn.player, applied->to_string()});
  if (verbose_log_ != nullptr) {
    *verbose_log_ << "t=" << log_.back().tick << " p=" << turn.player << " a=" << log_.back().action << '\n';
  }
  forward_model_->next(*state_, *applied);
  if (state_->is_terminal()) {
    for (int p : disqualified_) state_->set_result(p, PlayerResult::kDisqualified);
  }
}

GameResultRecord Game::run(std::span<Agent* const> agents, GameObserver* observer, std::ostream* verbose_log) {
  if (static_cast<int>(agents.size()) != state_->n_players()) {
    throw InvalidArgumentError("expected " + std::to_string(state_->n_players()) + " agents, got " +
                               std::to_string(agents.size()));
  }
  verbose_log_ = verbose_log;
  setup();
  for (std::size_t i = 0; i < agents.size(); ++i) agents[i]->initialize(static_cast<int>(i), forward_model_);

  while (!is_over()) {
    TurnContext turn = begin_turn();
    if (observer != nullptr) observer->on_turn(*state_, *turn.observation, turn.actions);
    Agent& agent = *agents[static_cast<std::size_t>(turn.player)];
    ActionPtr chosen;
    if (turn.is_decision()) {
      chosen = agent.get_action(*turn.observation, turn.actions);
    } else {
      agent.register_updated_observation(*turn.observation);
      chosen = turn.actions.front();
    }
    complete_turn(turn, chosen);
  }

  for (std::size_t i = 0; i < agents.size(); ++i) agents[i]->finalize(*state_->copy(static_cast<int>(i)));
  GameResultRecord out = record();
  if (observer != nullptr) observer->on_game_end(*state_, out);
  verbose_log_ = nullptr;
  return out;
}

GameResultRecord Game::record() const {
  GameResultRecord r;
  r.game = std::string(state_->game_name());
  r.seed = state_->params().seed;
  r.status = state_->status();
  r.results.assign(state_->results().begin(), state_->results().end());
  r.ticks = state_->tick();
  r.decisions = decisions_;
  r.rounds = state_->turn_order().round_counter();
  r.turns = state_->turn_order().turn_counter();
  r.log = log_;
  return r;
}

GameResultRecord run_game(const GameDescriptor& game, std::span<Agent* const> agents, const GameParameters& params,
                          const CoreConfig& config, GameObserver* observer, std::ostream* verbose_log) {
  GameInstance instance = game.create(static_cast<int>(agents.size()), params, config);
  Game g(std::move(instance.state), std::move(instance.forward_model), config);
  return g.run(agents, observer, verbose_log);
}

}  // namespace tag
