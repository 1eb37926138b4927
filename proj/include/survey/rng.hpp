#pragma once

#include <cstdint>
#include <random>

namespace survey {

/// All randomness in the library goes through this engine. The draw helpers
/// below avoid std distributions so streams are identical across standard
/// library implementations.
using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for stream `index` of a run seeded with `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return mix_seed(mix_seed(master) ^ mix_seed(index + 0x632be59bd9b4e019ULL));
}

/// Uniform integer in [0, bound). bound must be positive.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  // Lemire's multiply-shift with rejection.
  unsigned __int128 product = static_cast<unsigned __int128>(rng()) * bound;
  auto low = static_cast<std::uint64_t>(product);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      product = static_cast<unsigned __int128>(rng()) * bound;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

/// Uniform double in [0, 1).
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool coin(Rng& rng) { return (rng() >> 63) != 0; }

}  // namespace survey
