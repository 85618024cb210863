#pragma once

// Seeded random streams. Results must be reproducible across platforms, so
// the uniform mapping is fixed here rather than left to
// std::uniform_real_distribution.

#include <cstdint>
#include <random>

namespace lobbying {

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the index-th substream of a master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) noexcept {
  return derive_seed(derive_seed(master, a), b);
}

/// Uniform double strictly inside (0, 1).
inline double open_unit(std::mt19937_64& engine) {
  return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& engine, double lo, double hi) {
  return lo + (hi - lo) * open_unit(engine);
}

}  // namespace lobbying
