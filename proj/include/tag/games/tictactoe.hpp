#pragma once

#include <memory>
#include <tuple>

#include "tag/core/forward_model.hpp"
#include "tag/core/game_registry.hpp"
#include "tag/core/game_state.hpp"

namespace tag::tictactoe {

enum class Mark : std::int32_t { kEmpty = 0, kX = 1, kO = 2 };

inline Mark mark_of(int player) { return player == 0 ? Mark::kX : Mark::kO; }

class Params final : public GameParameters {
 public:
  int grid_size = 3;

  std::unique_ptr<GameParameters> clone() const override { return std::make_unique<Params>(*this); }
  nlohmann::json to_json() const override;
  void from_json(const nlohmann::json& j) override;
  void randomize(Rng& rng) override;
  void validate() const override;
};

class State final : public GameState {
 public:
  State(std::shared_ptr<const GameParameters> params, int n_players, bool partial_observable);

  std::unique_ptr<GameState> clone() const override { return std::unique_ptr<GameState>(new State(*this)); }
  std::string_view game_name() const override { return "TicTacToe"; }
  double score(int player) const override;
  std::vector<ComponentId> top_level_components() const override { return {board_}; }
  std::string describe(int viewer) const override;
  void reset() override;

  int grid_size() const;
  ComponentId board_id() const { return board_; }
  const GridBoard& board() const { return get<GridBoard>(board_); }
  GridBoard& board() { return get<GridBoard>(board_); }
  Mark at(int x, int y) const { return static_cast<Mark>(board().at(x, y)); }

 private:
  friend class ForwardModel;
  State(const State&) = default;

  ComponentId board_ = kNoComponent;
};

/// Lines (rows, columns, both diagonals) that hold no mark of the opponent of `mark`.
int open_lines(const GridBoard& board, Mark mark);
/// True when `mark` fills a whole row, column or diagonal.
bool has_line(const GridBoard& board, Mark mark);

class PlaceMark final : public ActionBase<PlaceMark> {
 public:
  PlaceMark(int x, int y) : x_(x), y_(y) {}

  void execute(GameState& state) const override;
  std::string to_string() const override;

  int x() const { return x_; }
  int y() const { return y_; }
  auto key() const { return std::tuple(x_, y_); }

 private:
  int x_;
  int y_;
};

class ForwardModel final : public tag::ForwardModel {
 public:
  std::unique_ptr<tag::ForwardModel> copy() const override { return std::make_unique<ForwardModel>(); }

 protected:
  void do_setup(GameState& state) const override;
  void do_next(GameState& state, const Action& action) const override;
  std::vector<ActionPtr> do_compute_actions(const GameState& state) const override;
};

GameDescriptor descriptor();

}  // namespace tag::tictactoe
