#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace blockmate {

// Deterministic seeded stream. All sampling goes through the helpers below
// (never std:: distributions, whose output is implementation-defined), so a
// given seed reproduces the same values on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [lo, hi] inclusive, exact via rejection.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % span;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % span);
  }

  // Uniform angle in (-pi, pi].
  double angle();

  // Standard normal via Box-Muller (deterministic, stateless pairing).
  double normal();

 private:
  std::mt19937_64 engine_;
};

// Seed derivation: mixes a master seed with stream labels so that distinct
// (label, index) streams are statistically independent and reproducible.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);
std::uint64_t mix_seed(std::uint64_t seed, std::string_view label);

}  // namespace blockmate
