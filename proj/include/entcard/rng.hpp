#pragma once

#include <cstdint>
#include <random>

// Seeded randomness helpers. All sampling goes through explicit generator
// state and hand-rolled transforms, so identical seeds give identical
// streams regardless of standard-library distribution internals.

namespace entcard {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-record seed: records stay independently reproducible whatever the
// generation order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return seed ^ splitmix64(index + 1);
}

// Uniform in [0, 1) with 53 bits of precision.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform in (0, 1]; safe as a log argument.
inline double uniform01_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Uniform integer in [lo, hi] via rejection-free scaling (bias is
// negligible at the range sizes used here and keeps the stream portable).
inline std::uint64_t uniform_int(std::mt19937_64& rng, std::uint64_t lo,
                                 std::uint64_t hi) {
  const std::uint64_t span = hi - lo + 1;
  return lo + static_cast<std::uint64_t>(uniform01(rng) * static_cast<double>(span));
}

}  // namespace entcard
