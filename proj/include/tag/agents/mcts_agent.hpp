#pragma once

#include <limits>
#include <memory>
#include <vector>

#include "tag/core/agent.hpp"

namespace tag {

struct MctsParams {
  double c = 1.4142135623730951;  ///< UCB exploration constant
  int max_tree_depth = 10;
  int iterations = 4000;
  void validate() const;
};

/// Closed-loop UCT without rollouts. Every node keeps the state reached by its
/// action; leaves are scored by the heuristic from the root player's view.
/// Opponent nodes select with the exploitation term negated.
class MctsAgent final : public Agent {
 public:
  explicit MctsAgent(MctsParams params = {}, std::uint64_t seed = 0);

  ActionPtr get_action(const GameState& observation, std::span<const ActionPtr> actions) override;
  std::string name() const override { return "mcts"; }
  const MctsParams& params() const { return params_; }

  struct RootChild {
    ActionPtr action;
    int visits = 0;
    double mean = 0.0;
  };
  struct SearchStats {
    int iterations = 0;
    int root_visits = 0;
    int nodes = 0;
    std::vector<RootChild> children;
  };
  const SearchStats& last_search() const { return stats_; }

 private:
  struct Node {
    std::unique_ptr<GameState> state;
    int parent = -1;
    int depth = 0;
    ActionPtr action;
    std::vector<ActionPtr> untried;
    std::vector<int> children;
    int visits = 0;
    double total = 0.0;
  };

  int add_node(std::unique_ptr<GameState> state, int parent, ActionPtr action);
  int select_child(const Node& node);

  MctsParams params_;
  Rng rng_;
  std::vector<Node> nodes_;
  SearchStats stats_;
};

}  // namespace tag
