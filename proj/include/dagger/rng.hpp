#pragma once

#include <cstdint>
#include <random>

#include "dagger/padic.hpp"

namespace dagger {

/// Seeded sampler used by every randomized check. It draws raw words from
/// std::mt19937_64 (whose output sequence is fixed by the standard) and maps
/// them to ranges by rejection, so results do not depend on the standard
/// library's distribution implementations.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x = 0;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool coin() { return (engine_() >> 63U) != 0; }

  /// Uniform in [0, bound) for an arbitrary-precision bound > 0.
  Integer below(const Integer& bound);

 private:
  std::mt19937_64 engine_;
};

}  // namespace dagger
