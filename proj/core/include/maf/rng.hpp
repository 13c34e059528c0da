#pragma once

#include <cstdint>
#include <random>

namespace maf {

/// splitmix64 step; used to derive independent sub-stream seeds so that the
/// tree-shape, subset and edit choices cannot interfere with each other.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Unbiased draw from [0, bound) using rejection on raw engine output.
/// Implemented by hand because the standard distributions are not
/// reproducible across library implementations.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) return 0;
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                        std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

/// Uniform integer in [lo, hi], inclusive.
inline std::uint64_t uniform_range(std::mt19937_64& rng, std::uint64_t lo,
                                   std::uint64_t hi) {
  return lo + uniform_below(rng, hi - lo + 1);
}

}  // namespace maf
