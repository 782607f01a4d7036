#include "tag/eval/speed.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <vector>

#include "tag/core/errors.hpp"

namespace tag {

namespace {

using Clock = std::chrono::steady_clock;

// Results fed here cannot be optimized away.
std::atomic<std::size_t> g_sink{0};
void keep(std::size_t v) { g_sink.fetch_add(v, std::memory_order_relaxed); }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

// Runs `timed(calls)` (returning seconds) once to warm up, then `repeats`
// times, and reports the median rate.
template <class Timed>
double rate(const SpeedConfig& config, Timed timed) {
  timed(config.warmup);
  std::vector<double> rates;
  for (int r = 0; r < config.repeats; ++r) {
    const double secs = timed(config.batch);
    rates.push_back(secs > 0.0 ? config.batch / secs : 0.0);
  }
  return median(std::move(rates));
}

template <class Body>
double time_loop(int calls, Body body) {
  const auto start = Clock::now();
  for (int i = 0; i < calls; ++i) body(i);
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

SpeedReport measure_speed(const GameDescriptor& game, int n_players, std::uint64_t seed, const CoreConfig& core,
                          const SpeedConfig& config) {
  if (config.batch < 1 || config.repeats < 1 || config.snapshots < 1 || config.warmup < 0) {
    throw InvalidArgumentError("speed harness needs positive batch, repeats and snapshots");
  }
  auto params = game.parameters(seed);
  GameInstance base = game.create(n_players, *params, core);
  const ForwardModel& fm = *base.forward_model;

  // Non-terminal states from seeded random play.
  std::vector<std::unique_ptr<GameState>> snapshots;
  Rng rng(mix_seed(seed, 0x5eedULL));
  for (std::uint64_t g = 0; snapshots.size() < static_cast<std::size_t>(config.snapshots); ++g) {
    auto state = base.state->clone();
    state->reseed(mix_seed(seed, g));
    fm.setup(*state);
    while (!state->is_terminal() && snapshots.size() < static_cast<std::size_t>(config.snapshots)) {
      snapshots.push_back(state->clone());
      const auto actions = fm.compute_available_actions(*state);
      fm.next(*state, *actions[rng.uniform(actions.size())]);
    }
  }
  std::vector<ActionPtr> chosen;
  for (const auto& s : snapshots) {
    const auto actions = fm.compute_available_actions(*s);
    chosen.push_back(actions[rng.uniform(actions.size())]);
  }
  const std::size_t n_snap = snapshots.size();

  SpeedReport out;
  auto fresh = base.state->clone();
  out.setup = rate(config, [&](int calls) { return time_loop(calls, [&](int) { fm.setup(*fresh); }); });
  out.actions = rate(config, [&](int calls) {
    return time_loop(calls, [&](int i) {
      keep(fm.compute_available_actions(*snapshots[static_cast<std::size_t>(i) % n_snap]).size());
    });
  });
  out.copy = rate(config, [&](int calls) {
    return time_loop(calls, [&](int i) {
      const auto& s = *snapshots[static_cast<std::size_t>(i) % n_snap];
      keep(static_cast<std::size_t>(s.copy(s.current_player())->tick()));
    });
  });
  // next: copies are made outside the timed region, one chunk at a time.
  constexpr int kChunk = 1024;
  std::vector<std::unique_ptr<GameState>> copies(kChunk);
  out.next = rate(config, [&](int calls) {
    double secs = 0.0;
    for (int done = 0; done < calls;) {
      const int n = std::min(kChunk, calls - done);
      for (int k = 0; k < n; ++k) copies[static_cast<std::size_t>(k)] = snapshots[static_cast<std::size_t>(done + k) % n_snap]->clone();
      secs += time_loop(n, [&](int k) {
        fm.next(*copies[static_cast<std::size_t>(k)], *chosen[static_cast<std::size_t>(done + k) % n_snap]);
      });
      done += n;
    }
    return secs;
  });
  return out;
}

}  // namespace tag
