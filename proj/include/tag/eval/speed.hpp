#pragma once

#include <cstdint>

#include "tag/core/game_registry.hpp"

namespace tag {

/// Calls per second of each forward-model / state operation.
struct SpeedReport {
  double setup = 0.0;
  double next = 0.0;
  double actions = 0.0;
  double copy = 0.0;

  bool operator==(const SpeedReport&) const = default;
};

struct SpeedConfig {
  int warmup = 10'000;
  int batch = 100'000;
  int repeats = 5;  ///< the median batch is reported
  int snapshots = 256;
};

/// Times each operation on states sampled from seeded random play. `next` is
/// timed on pre-made copies so copying is not counted.
SpeedReport measure_speed(const GameDescriptor& game, int n_players, std::uint64_t seed, const CoreConfig& core,
                          const SpeedConfig& config = {});

}  // namespace tag
