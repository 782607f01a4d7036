#include "tag/eval/report_export.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "tag/core/errors.hpp"

namespace tag {

std::optional<ReportFormat> parse_report_format(std::string_view s) {
  if (s == "json") return ReportFormat::kJson;
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "md" || s == "markdown") return ReportFormat::kMarkdown;
  return std::nullopt;
}

std::string report_json(const MetricsReport& report) { return to_json(report).dump(2) + "\n"; }

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string num(double v) {
  std::ostringstream out;
  out << std::setprecision(17) << v;
  return out.str();
}

std::string speed(double v) {
  if (v <= 0.0) return "-";
  std::ostringstream out;
  out << std::scientific << std::setprecision(1) << v;
  return out.str();
}

std::string fixed(double v, int digits = 2) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

}  // namespace

std::string report_csv(const MetricsReport& r) {
  std::ostringstream out;
  auto row = [&](const std::string& section, const std::string& key, const std::string& value) {
    out << section << ',' << csv_field(key) << ',' << csv_field(value) << '\n';
  };
  out << "section,key,value\n";
  row("summary", "game", r.game);
  row("summary", "nPlayers", std::to_string(r.n_players));
  row("summary", "nGames", std::to_string(r.n_games));
  row("summary", "agents", r.agents);
  row("summary", "seed", std::to_string(r.seed));
  row("summary", "mu1.mean", num(r.mu1_action_space));
  row("summary", "mu2.mean", num(r.mu2_branching));
  row("summary", "mu3.mean", num(r.mu3_state_size));
  row("summary", "mu4.meanPercent", num(r.mu4_hidden_percent));
  row("summary", "mu5.setup", num(r.mu5_speed.setup));
  row("summary", "mu5.next", num(r.mu5_speed.next));
  row("summary", "mu5.actions", num(r.mu5_speed.actions));
  row("summary", "mu5.copy", num(r.mu5_speed.copy));
  row("summary", "mu6.decisions", num(r.mu6_length.decisions));
  row("summary", "mu6.ticks", num(r.mu6_length.ticks));
  row("summary", "mu6.rounds", num(r.mu6_length.rounds));
  row("summary", "mu6.turns", num(r.mu6_length.turns));
  row("summary", "mu6.actionsPerTurn", num(r.mu6_length.actions_per_turn));
  row("summary", "mu7.min", num(r.mu7_reward.min));
  row("summary", "mu7.max", num(r.mu7_reward.max));
  row("summary", "mu7.mean", num(r.mu7_reward.mean));
  row("summary", "mu7.stddev", num(r.mu7_reward.stddev));
  for (std::size_t p = 0; p < r.wins.size(); ++p) row("summary", "wins.p" + std::to_string(p), std::to_string(r.wins[p]));
  row("summary", "draws", std::to_string(r.draws));
  for (const auto& [size, count] : r.mu1_histogram) row("mu1_histogram", std::to_string(size), std::to_string(count));
  for (const auto& [hand, mean] : r.mu1_by_hand_size) row("mu1_by_hand_size", std::to_string(hand), num(mean));
  return out.str();
}

std::string reports_markdown(std::span<const MetricsReport> reports) {
  std::ostringstream out;
  out << "| Game | Players | Games | Action space | Branching | State size | Hidden % | setup/s | next/s | "
         "actions/s | copy/s | Decisions | Ticks | Rounds | Actions/turn | Reward min | Reward max |\n";
  out << "|---|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|\n";
  for (const auto& r : reports) {
    out << "| " << r.game << " | " << r.n_players << " | " << r.n_games << " | " << fixed(r.mu1_action_space) << " | "
        << fixed(r.mu2_branching) << " | " << fixed(r.mu3_state_size) << " | " << fixed(r.mu4_hidden_percent)
        << " | " << speed(r.mu5_speed.setup) << " | " << speed(r.mu5_speed.next) << " | "
        << speed(r.mu5_speed.actions) << " | " << speed(r.mu5_speed.copy) << " | " << fixed(r.mu6_length.decisions)
        << " | " << fixed(r.mu6_length.ticks) << " | " << fixed(r.mu6_length.rounds) << " | "
        << fixed(r.mu6_length.actions_per_turn) << " | " << fixed(r.mu7_reward.min, 3) << " | "
        << fixed(r.mu7_reward.max, 3) << " |\n";
  }
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw TagError("cannot write " + path.string());
  out << text;
  out.flush();
  if (!out) throw TagError("failed writing " + path.string());
}

void write_report(const MetricsReport& report, ReportFormat format, const std::filesystem::path& path) {
  switch (format) {
    case ReportFormat::kJson: write_text(path, report_json(report)); return;
    case ReportFormat::kCsv: write_text(path, report_csv(report)); return;
    case ReportFormat::kMarkdown: write_text(path, reports_markdown(std::span(&report, 1))); return;
  }
}

}  // namespace tag
