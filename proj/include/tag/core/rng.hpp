#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace tag {

/// One step of SplitMix64. Used both for seeding and for deriving child seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// Combines two seeds into one well-mixed seed.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// xoshiro256** seeded from a single 64-bit value through SplitMix64.
///
/// The engine and the bounded/real helpers below are fully specified here so
/// that shuffles and random choices are identical on every platform. The
/// standard library distributions are not used for that reason.
class Rng {
 public:
  using result_type = std::uint64_t;

  Rng() : Rng(0) {}
  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return next(); }
  std::uint64_t next();

  /// Uniform integer in [0, n). Rejection sampling; n must be > 0.
  std::uint64_t uniform(std::uint64_t n);
  int uniform_int(int n) { return static_cast<int>(uniform(static_cast<std::uint64_t>(n))); }

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform_real();

  /// Fisher-Yates, walking from the back.
  template <class T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform(i));
      using std::swap;
      swap(items[i - 1], items[j]);
    }
  }

  /// Child stream derived from the current state and a salt; does not advance this stream.
  Rng split(std::uint64_t salt) const;

  bool operator==(const Rng&) const = default;

 private:
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace tag
