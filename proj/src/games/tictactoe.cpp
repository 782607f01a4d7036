#include "tag/games/tictactoe.hpp"

#include <algorithm>
#include <sstream>

#include "tag/core/errors.hpp"

namespace tag::tictactoe {

nlohmann::json Params::to_json() const {
  auto j = GameParameters::to_json();
  j["gridSize"] = grid_size;
  return j;
}

void Params::from_json(const nlohmann::json& j) {
  GameParameters::from_json(j);
  if (j.contains("gridSize")) grid_size = j.at("gridSize").get<int>();
}

void Params::randomize(Rng& rng) { grid_size = 3 + rng.uniform_int(3); }

void Params::validate() const {
  if (grid_size < 2) throw InvalidArgumentError("Tic-Tac-Toe grid size must be at least 2");
}

State::State(std::shared_ptr<const GameParameters> params, int n_players, bool partial_observable)
    : GameState(std::move(params), n_players, TurnOrder(n_players), partial_observable) {
  if (n_players != 2) throw InvalidArgumentError("Tic-Tac-Toe is played by exactly 2 players");
}

int State::grid_size() const { return static_cast<const Params&>(params()).grid_size; }

void State::reset() {
  GameState::reset();
  board_ = kNoComponent;
}

double State::score(int player) const {
  switch (result(player)) {
    case PlayerResult::kWin: return 1.0;
    case PlayerResult::kLose:
    case PlayerResult::kDisqualified: return -1.0;
    case PlayerResult::kDraw: return 0.0;
    case PlayerResult::kOngoing: break;
  }
  const int n = board().width();
  const double total_lines = 2.0 * n + 2.0;
  const Mark mine = mark_of(player);
  const Mark theirs = mark_of(1 - player);
  return (open_lines(board(), mine) - open_lines(board(), theirs)) / total_lines;
}

std::string State::describe(int /*viewer*/) const {
  std::ostringstream out;
  const int n = board().width();
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      const Mark m = at(x, y);
      out << (m == Mark::kX ? 'X' : m == Mark::kO ? 'O' : '.');
    }
    out << '\n';
  }
  return out.str();
}

namespace {

// Visits every line of the board as (start, step) pairs over flat indices.
template <class F>
void for_each_line(int n, F&& f) {
  for (int i = 0; i < n; ++i) {
    f(i * n, 1);  // row i
    f(i, n);      // column i
  }
  f(0, n + 1);      // main diagonal
  f(n - 1, n - 1);  // anti-diagonal
}

}  // namespace

int open_lines(const GridBoard& board, Mark mark) {
  const Mark opponent = mark == Mark::kX ? Mark::kO : Mark::kX;
  const int n = board.width();
  const auto cells = board.cells();
  int open = 0;
  for_each_line(n, [&](int start, int step) {
    for (int k = 0; k < n; ++k) {
      if (static_cast<Mark>(cells[static_cast<std::size_t>(start + k * step)]) == opponent) return;
    }
    ++open;
  });
  return open;
}

bool has_line(const GridBoard& board, Mark mark) {
  const int n = board.width();
  const auto cells = board.cells();
  bool found = false;
  for_each_line(n, [&](int start, int step) {
    for (int k = 0; k < n; ++k) {
      if (static_cast<Mark>(cells[static_cast<std::size_t>(start + k * step)]) != mark) return;
    }
    found = true;
  });
  return found;
}

void PlaceMark::execute(GameState& state) const {
  auto& s = dynamic_cast<State&>(state);
  if (s.at(x_, y_) != Mark::kEmpty) throw IllegalActionError("cell " + to_string() + " is occupied");
  s.board().set(x_, y_, static_cast<std::int32_t>(mark_of(s.current_player())));
}

std::string PlaceMark::to_string() const {
  return "Place(" + std::to_string(x_) + "," + std::to_string(y_) + ")";
}

void ForwardModel::do_setup(GameState& state) const {
  auto& s = dynamic_cast<State&>(state);
  const int n = s.grid_size();
  Component board;
  board.name = "board";
  board.body = GridBoard(n, n, static_cast<std::int32_t>(Mark::kEmpty));
  s.board_ = s.register_component(std::move(board));
  s.turn_order().reset(0);
  s.set_phase(kMainPhase);
}

void ForwardModel::do_next(GameState& state, const Action& action) const {
  auto& s = dynamic_cast<State&>(state);
  const int mover = s.current_player();
  action.execute(s);
  if (has_line(s.board(), mark_of(mover))) {
    s.set_result(mover, PlayerResult::kWin);
    s.set_result(1 - mover, PlayerResult::kLose);
    s.end_game();
    return;
  }
  const auto cells = s.board().cells();
  if (std::find(cells.begin(), cells.end(), static_cast<std::int32_t>(Mark::kEmpty)) == cells.end()) {
    s.end_game(PlayerResult::kDraw);
    return;
  }
  s.turn_order().end_player_turn(s.results());
}

std::vector<ActionPtr> ForwardModel::do_compute_actions(const GameState& state) const {
  const auto& s = dynamic_cast<const State&>(state);
  const int n = s.board().width();
  std::vector<ActionPtr> actions;
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      if (s.at(x, y) == Mark::kEmpty) actions.push_back(make_action<PlaceMark>(x, y));
    }
  }
  return actions;
}

GameDescriptor descriptor() {
  GameDescriptor d;
  d.name = "TicTacToe";
  d.min_players = 2;
  d.max_players = 2;
  d.categories = {Category::kSimple, Category::kAbstract};
  d.mechanics = {Mechanic::kPatternBuilding};
  d.make_parameters = [] { return std::make_unique<Params>(); };
  d.make_state = [](std::shared_ptr<const GameParameters> params, int n, const CoreConfig& config) {
    return std::unique_ptr<GameState>(std::make_unique<State>(std::move(params), n, config.partial_observable));
  };
  d.make_forward_model = [] { return std::make_shared<const ForwardModel>(); };
  return d;
}

}  // namespace tag::tictactoe
