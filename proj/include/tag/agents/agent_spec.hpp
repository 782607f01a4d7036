#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "tag/core/agent.hpp"

namespace tag {

/// `name` or `name(key=value,...)`, e.g. `mcts(c=1.414,budget=4000)`.
struct AgentSpec {
  std::string name;
  std::map<std::string, std::string, std::less<>> args;

  std::string to_string() const;
  bool operator==(const AgentSpec&) const = default;
};

/// Throws InvalidArgumentError on malformed specs.
AgentSpec parse_agent_spec(std::string_view text);
/// Splits a comma separated list, ignoring commas inside parentheses.
std::vector<AgentSpec> parse_agent_list(std::string_view text);

/// True for seats filled by a person rather than an algorithm.
bool is_human_spec(const AgentSpec& spec);
/// True when the agent's choices depend only on its seed and observations.
bool is_deterministic_spec(const AgentSpec& spec);

struct AgentContext {
  std::uint64_t seed = 0;
  std::istream* in = nullptr;
  std::ostream* out = nullptr;
};

/// Builds random, osla, rhea, mcts or console agents. Unknown names and
/// unknown keys throw InvalidArgumentError.
std::unique_ptr<Agent> make_agent(const AgentSpec& spec, const AgentContext& context);

/// Seed for the agent in `seat` of a game played with `game_seed`.
std::uint64_t agent_seed(std::uint64_t game_seed, int seat);

}  // namespace tag
