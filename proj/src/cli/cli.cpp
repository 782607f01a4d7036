#include "tag/cli/cli.hpp"

#include <csignal>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "tag/agents/agent_spec.hpp"
#include "tag/core/errors.hpp"
#include "tag/core/game.hpp"
#include "tag/eval/metrics.hpp"
#include "tag/eval/parallel.hpp"
#include "tag/eval/report_export.hpp"
#include "tag/eval/tournament.hpp"
#include "tag/games/builtin_games.hpp"
#include "tag/service/server.hpp"

namespace tag {

namespace {

/// Usage problems: reported with exit code 2.
class UsageError : public TagError {
 public:
  using TagError::TagError;
};

struct CommonFlags {
  std::string players = "random";
  std::optional<std::uint64_t> seed;
  bool verbose = false;
  bool no_partial_observable = false;
  bool disqualify = false;
  bool randomize_params = false;
  int jobs = 1;

  CoreConfig core() const {
    CoreConfig c;
    c.verbose = verbose;
    c.partial_observable = !no_partial_observable;
    c.disqualify_on_illegal_action = disqualify;
    return c;
  }
};

std::uint64_t entropy_seed() {
  std::random_device device;
  return (static_cast<std::uint64_t>(device()) << 32 | device()) & 0xffffffffffffULL;
}

void add_core_flags(CLI::App* cmd, CommonFlags& f) {
  cmd->add_flag("--verbose,-v", f.verbose, "Print one line per tick");
  cmd->add_flag("--no-partial-observable", f.no_partial_observable, "Show agents the full state");
  cmd->add_flag("--disqualify-on-illegal", f.disqualify, "Disqualify players returning illegal actions");
  cmd->add_flag("--randomize-params", f.randomize_params, "Randomize game parameters per game");
}

/// Expands names and `category:X` entries into registry names.
std::vector<std::string> expand_games(const std::vector<std::string>& items) {
  const auto& registry = builtin_games();
  std::vector<std::string> out;
  for (const auto& item : items) {
    if (item.rfind("category:", 0) == 0) {
      const auto category = parse_category(item.substr(9));
      if (!category) throw UsageError("unknown category '" + item.substr(9) + "'");
      const auto found = registry.filter(*category);
      if (found.empty()) throw UsageError("no games in category '" + item.substr(9) + "'");
      for (const auto* g : found) out.push_back(g->name);
    } else {
      out.push_back(registry.lookup(item).name);
    }
  }
  if (out.empty()) throw UsageError("no games given");
  return out;
}

std::vector<AgentSpec> seat_specs(const std::string& players, int n_players) {
  auto specs = parse_agent_list(players);
  if (specs.size() == 1 && n_players > 1) specs.assign(static_cast<std::size_t>(n_players), specs.front());
  return specs;
}

void check_players(const GameDescriptor& game, std::size_t n) {
  if (!game.supports(static_cast<int>(n))) {
    throw UsageError(game.name + " supports " + std::to_string(game.min_players) + ".." +
                     std::to_string(game.max_players) + " players, got " + std::to_string(n));
  }
}

std::string results_string(const std::vector<PlayerResult>& results) {
  std::string out;
  for (std::size_t p = 0; p < results.size(); ++p) {
    out += (p ? " " : "") + std::string("p") + std::to_string(p) + "=" + std::string(to_string(results[p]));
  }
  return out;
}

struct PlayedGame {
  GameResultRecord record;
  std::string verbose;
};

PlayedGame play_one(const GameDescriptor& game, const std::vector<AgentSpec>& specs, std::uint64_t seed,
                    const CommonFlags& flags, std::istream& in, std::ostream& out, bool capture_log) {
  check_players(game, specs.size());
  auto params = game.parameters(seed, nullptr, flags.randomize_params);
  std::vector<std::unique_ptr<Agent>> agents;
  std::vector<Agent*> raw;
  for (std::size_t seat = 0; seat < specs.size(); ++seat) {
    agents.push_back(make_agent(specs[seat], {agent_seed(seed, static_cast<int>(seat)), &in, &out}));
    raw.push_back(agents.back().get());
  }
  std::ostringstream log;
  PlayedGame played;
  played.record = run_game(game, raw, *params, flags.core(), nullptr, capture_log ? &log : nullptr);
  played.verbose = log.str();
  return played;
}

int cmd_play(const std::string& game_name, const CommonFlags& f, std::istream& in, std::ostream& out) {
  const GameDescriptor& game = builtin_games().lookup(game_name);
  const auto specs = parse_agent_list(f.players);
  check_players(game, specs.size());
  const std::uint64_t seed = f.seed.value_or(entropy_seed());
  out << "game: " << game.name << "\nseed: " << seed << "\nplayers:";
  for (const auto& s : specs) out << ' ' << s.to_string();
  out << '\n' << std::flush;
  // Console seats need the log as it happens.
  const bool interactive = std::any_of(specs.begin(), specs.end(), [](const AgentSpec& s) { return is_human_spec(s); });
  std::unique_ptr<PlayedGame> played;
  if (interactive && f.verbose) {
    auto params = game.parameters(seed, nullptr, f.randomize_params);
    std::vector<std::unique_ptr<Agent>> agents;
    std::vector<Agent*> raw;
    for (std::size_t seat = 0; seat < specs.size(); ++seat) {
      agents.push_back(make_agent(specs[seat], {agent_seed(seed, static_cast<int>(seat)), &in, &out}));
      raw.push_back(agents.back().get());
    }
    played = std::make_unique<PlayedGame>();
    played->record = run_game(game, raw, *params, f.core(), nullptr, &out);
  } else {
    played = std::make_unique<PlayedGame>(play_one(game, specs, seed, f, in, out, f.verbose));
    out << played->verbose;
  }
  const auto& r = played->record;
  out << "result: " << results_string(r.results) << "\n";
  out << "ticks: " << r.ticks << " decisions: " << r.decisions << " rounds: " << r.rounds << " turns: " << r.turns
      << "\n";
  out << "seed: " << seed << "\n";
  return kExitOk;
}

int cmd_many(const std::vector<std::string>& game_items, int reps, const std::string& seeds_text, int n_players,
             const CommonFlags& f, std::istream& in, std::ostream& out) {
  if (reps < 1) throw UsageError("--reps must be at least 1");
  const auto games = expand_games(game_items);
  std::vector<std::uint64_t> seeds;
  std::string mode;
  if (!seeds_text.empty()) {
    if (f.seed) throw UsageError("--seed and --seeds are exclusive");
    std::stringstream ss(seeds_text);
    for (std::string item; std::getline(ss, item, ',');) {
      try {
        std::size_t used = 0;
        seeds.push_back(std::stoull(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw UsageError("bad seed '" + item + "' in --seeds");
      }
    }
    if (static_cast<int>(seeds.size()) != reps) {
      throw UsageError("--seeds lists " + std::to_string(seeds.size()) + " seeds for " + std::to_string(reps) +
                       " repetitions");
    }
    mode = "list";
  } else if (f.seed) {
    seeds.assign(static_cast<std::size_t>(reps), *f.seed);
    mode = "fixed";
  } else {
    const std::uint64_t base = entropy_seed();
    for (int i = 0; i < reps; ++i) seeds.push_back(mix_seed(base, static_cast<std::uint64_t>(i)) & 0xffffffffffffULL);
    mode = "fresh";
  }
  out << "seed mode: " << mode << "\n";

  for (const auto& name : games) {
    const GameDescriptor& game = builtin_games().lookup(name);
    const int n = n_players > 0 ? n_players : std::max(game.min_players, static_cast<int>(parse_agent_list(f.players).size()));
    const auto specs = seat_specs(f.players, n);
    check_players(game, specs.size());
    for (const auto& s : specs) {
      if (is_human_spec(s)) throw UsageError("'many' needs AI agents, got '" + s.name + "'");
    }
    std::vector<std::int64_t> wins(specs.size(), 0);
    std::int64_t draws = 0;
    parallel_ordered(
        static_cast<std::size_t>(reps), f.jobs,
        [&](std::size_t i) { return play_one(game, specs, seeds[i], f, in, out, f.verbose); },
        [&](std::size_t i, PlayedGame&& g) {
          out << g.verbose;
          out << game.name << " rep=" << i << " seed=" << seeds[i] << " " << results_string(g.record.results)
              << " ticks=" << g.record.ticks << "\n";
          bool any_win = false;
          for (std::size_t p = 0; p < g.record.results.size(); ++p) {
            if (g.record.results[p] == PlayerResult::kWin) {
              ++wins[p];
              any_win = true;
            }
          }
          if (!any_win) ++draws;
        });
    out << game.name << " win rates:";
    for (std::size_t p = 0; p < specs.size(); ++p) {
      out << " p" << p << "(" << specs[p].to_string() << ")=" << std::fixed << std::setprecision(3)
          << static_cast<double>(wins[p]) / reps;
    }
    out << " no-winner=" << static_cast<double>(draws) / reps << std::defaultfloat << "\n";
  }
  return kExitOk;
}

int cmd_report(const std::string& game_name, int n_games, int n_players, const std::string& out_dir,
               bool no_speed, int speed_batch, const CommonFlags& f, std::ostream& out) {
  const GameDescriptor& game = builtin_games().lookup(game_name);
  ReportConfig config;
  config.game = game.name;
  config.n_players = n_players > 0 ? n_players : std::max(game.min_players, static_cast<int>(parse_agent_list(f.players).size()));
  check_players(game, static_cast<std::size_t>(config.n_players));
  config.n_games = n_games;
  if (n_games < 1) throw UsageError("--n must be at least 1");
  config.agents = parse_agent_list(f.players);
  config.seed = f.seed.value_or(entropy_seed());
  config.jobs = f.jobs;
  config.core = f.core();
  config.randomize_params = f.randomize_params;
  config.measure_speed = !no_speed;
  if (speed_batch > 0) {
    config.speed.batch = speed_batch;
    config.speed.warmup = std::min(config.speed.warmup, speed_batch);
  }
  out << "seed: " << config.seed << "\n" << std::flush;
  const MetricsReport report = run_report(builtin_games(), config);
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  write_report(report, ReportFormat::kJson, dir / "report.json");
  write_report(report, ReportFormat::kCsv, dir / "report.csv");
  write_report(report, ReportFormat::kMarkdown, dir / "report.md");
  out << reports_markdown(std::span(&report, 1));
  out << "wrote " << (dir / "report.json").string() << ", report.csv, report.md\n";
  out << "seed: " << config.seed << "\n";
  return kExitOk;
}

int cmd_tournament(const std::vector<std::string>& game_items, int reps, const std::string& out_dir,
                   const CommonFlags& f, std::ostream& out) {
  TournamentConfig config;
  config.games = expand_games(game_items);
  config.agents = parse_agent_list(f.players);
  if (config.agents.size() < 2) throw UsageError("a tournament needs at least two --players");
  if (reps < 1) throw UsageError("--reps must be at least 1");
  config.repetitions = reps;
  config.seed = f.seed.value_or(entropy_seed());
  config.jobs = f.jobs;
  config.core = f.core();
  config.randomize_params = f.randomize_params;
  out << "seed: " << config.seed << "\n" << std::flush;
  const TournamentResult result = run_tournament(builtin_games(), config);
  out << tournament_table(result);
  if (!out_dir.empty()) {
    const std::filesystem::path dir(out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    write_text(dir / "tournament.json", to_json(result).dump(2) + "\n");
    out << "wrote " << (dir / "tournament.json").string() << "\n";
  }
  out << "seed: " << config.seed << "\n";
  return kExitOk;
}

PlayServer* g_server = nullptr;

int cmd_serve(const std::string& host, int port, int pacing_ms, const std::string& static_dir, const CommonFlags& f,
              std::ostream& out) {
  ServiceOptions options;
  options.session.ai_pacing = std::chrono::milliseconds(pacing_ms);
  options.session.core = f.core();
  options.static_dir = static_dir;
  PlayServer server(builtin_games(), options);
  const int bound = server.bind(host, port);
  if (bound < 0) throw TagError("cannot bind " + host + ":" + std::to_string(port));
  out << "listening on http://" << host << ":" << bound << "\n" << std::flush;
  g_server = &server;
  std::signal(SIGINT, [](int) {
    if (g_server) g_server->stop();
  });
  std::signal(SIGTERM, [](int) {
    if (g_server) g_server->stop();
  });
  server.listen();
  g_server = nullptr;
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tabletop game AI engine: play games, gather metrics, run tournaments and serve sessions", "tag"};
  app.require_subcommand(1);
  CommonFlags f;
  std::uint64_t seed_value = 0;

  auto add_seed = [&](CLI::App* cmd) { return cmd->add_option("--seed", seed_value, "Random seed (echoed)"); };

  std::string play_game;
  auto* play = app.add_subcommand("play", "Play one game");
  play->add_option("game", play_game, "Game name")->required();
  play->add_option("--players", f.players, "Comma separated agent specs, one per seat")->required();
  auto* play_seed = add_seed(play);
  add_core_flags(play, f);

  std::vector<std::string> many_games;
  int reps = 10;
  std::string seeds_text;
  int n_players = 0;
  auto* many = app.add_subcommand("many", "Play many games and report win rates");
  many->add_option("games,--games", many_games, "Game names or category:<Category>")->delimiter(',');
  many->add_option("--players", f.players, "Agent specs (one spec fills every seat)");
  many->add_option("--reps", reps, "Repetitions per game");
  many->add_option("--seeds", seeds_text, "Comma separated seed per repetition");
  many->add_option("--nplayers", n_players, "Players per game");
  many->add_option("--jobs", f.jobs, "Parallel games (0 = all cores)");
  auto* many_seed = add_seed(many);
  add_core_flags(many, f);

  std::string report_game;
  int n_games = 1000;
  std::string out_dir = ".";
  bool no_speed = false;
  int speed_batch = 0;
  auto* report = app.add_subcommand("report", "Measure a game and write report.json/csv/md");
  report->add_option("game", report_game, "Game name")->required();
  report->add_option("--n", n_games, "Games to play");
  report->add_option("--players", f.players, "Agent specs (one spec fills every seat)");
  report->add_option("--nplayers", n_players, "Players per game");
  report->add_option("--out", out_dir, "Output directory");
  report->add_option("--jobs", f.jobs, "Parallel games (0 = all cores)");
  report->add_flag("--no-speed", no_speed, "Skip the speed measurement");
  report->add_option("--speed-batch", speed_batch, "Calls per timed speed batch");
  auto* report_seed = add_seed(report);
  add_core_flags(report, f);

  std::vector<std::string> tour_games;
  std::string tour_out;
  auto* tour = app.add_subcommand("tournament", "Round robin between agents");
  tour->add_option("games,--games", tour_games, "Game names or category:<Category>")->delimiter(',');
  tour->add_option("--players", f.players, "Agent specs, at least two")->required();
  tour->add_option("--reps", reps, "Games per pairing and seating");
  tour->add_option("--out", tour_out, "Directory for tournament.json");
  tour->add_option("--jobs", f.jobs, "Parallel games (0 = all cores)");
  auto* tour_seed = add_seed(tour);
  add_core_flags(tour, f);

  std::string host = "127.0.0.1";
  int port = 8080;
  int pacing_ms = 300;
  std::string static_dir;
  auto* serve = app.add_subcommand("serve", "Run the play service");
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--port", port, "Port to bind (0 = any free port)");
  serve->add_option("--pacing-ms", pacing_ms, "Minimum milliseconds per AI decision");
  serve->add_option("--static", static_dir, "Directory served at /");
  add_core_flags(serve, f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << app.help();
    return kExitUsage;
  }

  for (auto* opt : {play_seed, many_seed, report_seed, tour_seed}) {
    if (opt->count() > 0) f.seed = seed_value;
  }

  try {
    if (play->parsed()) return cmd_play(play_game, f, in, out);
    if (many->parsed()) return cmd_many(many_games, reps, seeds_text, n_players, f, in, out);
    if (report->parsed()) return cmd_report(report_game, n_games, n_players, out_dir, no_speed, speed_batch, f, out);
    if (tour->parsed()) return cmd_tournament(tour_games, reps, tour_out, f, out);
    if (serve->parsed()) return cmd_serve(host, port, pacing_ms, static_dir, f, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgumentError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NotFoundError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GameAbortedError& e) {
    err << "aborted: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace tag
