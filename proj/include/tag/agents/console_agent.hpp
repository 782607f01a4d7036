#pragma once

#include <iosfwd>

#include "tag/core/agent.hpp"

namespace tag {

/// Human at a terminal: shows the observation and numbered actions, reads an
/// index. Invalid input re-prompts; end of input raises GameAbortedError.
class ConsoleAgent final : public Agent {
 public:
  ConsoleAgent(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  ActionPtr get_action(const GameState& observation, std::span<const ActionPtr> actions) override;
  std::string name() const override { return "console"; }

 private:
  std::istream& in_;
  std::ostream& out_;
};

}  // namespace tag
