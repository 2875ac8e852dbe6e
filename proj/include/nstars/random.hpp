#pragma once

#include <cstdint>
#include <random>

namespace nstars {

/// Seedable 64-bit generator (MT19937-64) with distribution code written out
/// here instead of taken from <random>, so a seed reproduces the same stream
/// under any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound) by multiply-shift with rejection
  /// (no modulo bias). bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double probability) { return uniform01() < probability; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace nstars
