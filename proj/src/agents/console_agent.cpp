#include "tag/agents/console_agent.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>

#include "tag/core/errors.hpp"

namespace tag {

ActionPtr ConsoleAgent::get_action(const GameState& observation, std::span<const ActionPtr> actions) {
  if (actions.empty()) throw InvalidArgumentError("console agent offered no actions");
  out_ << observation.describe(player_id());
  for (std::size_t i = 0; i < actions.size(); ++i) out_ << "  [" << i << "] " << actions[i]->to_string() << '\n';
  std::string line;
  for (;;) {
    out_ << "p" << player_id() << " choose 0-" << actions.size() - 1 << ": " << std::flush;
    if (!std::getline(in_, line)) throw GameAbortedError("input closed while waiting for player " +
                                                         std::to_string(player_id()));
    const auto first = line.find_first_not_of(" \t\r");
    const auto last = line.find_last_not_of(" \t\r");
    if (first == std::string::npos) continue;
    std::size_t index = 0;
    const char* begin = line.data() + first;
    const char* end = line.data() + last + 1;
    const auto [ptr, ec] = std::from_chars(begin, end, index);
    if (ec == std::errc() && ptr == end && index < actions.size()) return actions[index];
    out_ << "invalid choice '" << line << "'\n";
  }
}

}  // namespace tag
