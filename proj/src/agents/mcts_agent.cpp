#include "tag/agents/mcts_agent.hpp"

#include <cmath>

#include "tag/core/errors.hpp"

namespace tag {

void MctsParams::validate() const {
  if (!(c >= 0.0)) throw InvalidArgumentError("mcts exploration constant must not be negative");
  if (max_tree_depth < 1) throw InvalidArgumentError("mcts max tree depth must be at least 1");
  if (iterations < 1) throw InvalidArgumentError("mcts budget must be positive");
}

MctsAgent::MctsAgent(MctsParams params, std::uint64_t seed) : params_(params), rng_(seed) { params_.validate(); }

int MctsAgent::add_node(std::unique_ptr<GameState> state, int parent, ActionPtr action) {
  Node node;
  if (!state->is_terminal()) node.untried = forward_model().compute_available_actions(*state);
  node.state = std::move(state);
  node.parent = parent;
  node.depth = parent < 0 ? 0 : nodes_[static_cast<std::size_t>(parent)].depth + 1;
  node.action = std::move(action);
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

int MctsAgent::select_child(const Node& node) {
  const double sign = node.state->current_player() == player_id() ? 1.0 : -1.0;
  const double log_n = std::log(static_cast<double>(node.visits));
  double best = -std::numeric_limits<double>::infinity();
  int chosen = -1;
  int ties = 0;
  for (int idx : node.children) {
    const Node& child = nodes_[static_cast<std::size_t>(idx)];
    double ucb = std::numeric_limits<double>::infinity();
    if (child.visits > 0) {
      ucb = sign * (child.total / child.visits) + params_.c * std::sqrt(log_n / child.visits);
    }
    if (ucb > best) {
      best = ucb;
      chosen = idx;
      ties = 1;
    } else if (ucb == best && rng_.uniform(static_cast<std::uint64_t>(++ties)) == 0) {
      chosen = idx;
    }
  }
  return chosen;
}

ActionPtr MctsAgent::get_action(const GameState& observation, std::span<const ActionPtr> actions) {
  if (actions.empty()) throw InvalidArgumentError("mcts agent offered no actions");
  stats_ = {};
  if (actions.size() == 1) return actions.front();

  nodes_.clear();
  nodes_.reserve(static_cast<std::size_t>(params_.iterations) + 1);
  add_node(observation.copy(), -1, nullptr);
  nodes_[0].untried.assign(actions.begin(), actions.end());

  for (int it = 0; it < params_.iterations; ++it) {
    int current = 0;
    // Selection: descend through fully expanded nodes.
    for (;;) {
      const Node& node = nodes_[static_cast<std::size_t>(current)];
      if (node.state->is_terminal() || node.depth >= params_.max_tree_depth || !node.untried.empty() ||
          node.children.empty()) {
        break;
      }
      current = select_child(node);
    }
    // Expansion: one untried action, chosen at random.
    Node& leaf = nodes_[static_cast<std::size_t>(current)];
    if (!leaf.state->is_terminal() && leaf.depth < params_.max_tree_depth && !leaf.untried.empty()) {
      const std::size_t pick = rng_.uniform(leaf.untried.size());
      ActionPtr action = leaf.untried[pick];
      leaf.untried[pick] = leaf.untried.back();
      leaf.untried.pop_back();
      auto next = leaf.state->copy();
      forward_model().next(*next, *action);
      const int child = add_node(std::move(next), current, std::move(action));
      nodes_[static_cast<std::size_t>(current)].children.push_back(child);
      current = child;
    }
    // Evaluation without rollout, then backup along the path.
    const double value = evaluate(*nodes_[static_cast<std::size_t>(current)].state);
    for (int n = current; n >= 0; n = nodes_[static_cast<std::size_t>(n)].parent) {
      Node& node = nodes_[static_cast<std::size_t>(n)];
      ++node.visits;
      node.total += value;
    }
    ++stats_.iterations;
  }

  const Node& root = nodes_[0];
  stats_.root_visits = root.visits;
  stats_.nodes = static_cast<int>(nodes_.size());
  int best = -1;
  for (int idx : root.children) {
    const Node& child = nodes_[static_cast<std::size_t>(idx)];
    const double mean = child.visits > 0 ? child.total / child.visits : 0.0;
    stats_.children.push_back({child.action, child.visits, mean});
    if (best < 0) {
      best = idx;
      continue;
    }
    const Node& incumbent = nodes_[static_cast<std::size_t>(best)];
    const double incumbent_mean = incumbent.visits > 0 ? incumbent.total / incumbent.visits : 0.0;
    if (child.visits > incumbent.visits || (child.visits == incumbent.visits && mean > incumbent_mean)) best = idx;
  }
  const ActionPtr chosen = nodes_[static_cast<std::size_t>(best)].action;
  nodes_.clear();
  for (const auto& a : actions) {
    if (a->equals(*chosen)) return a;
  }
  throw TagError("mcts: chosen action is not among the offered actions");
}

}  // namespace tag
