#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace udn {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Folds a list of integers into one seed: h <- mix64(h ^ k) for each key.
constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = 0x6A09E667F3BCC908ULL;
  for (auto k : keys) h = mix64(h ^ k);
  return h;
}

// Stream tags so independent consumers of one run never share a sequence.
enum class Stream : std::uint64_t {
  ue_drop = 1,
  shadow_common = 2,
  shadow_site = 3,
  fading = 4,
  los_phase = 5,
  sched_drop = 6,
};

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  return Rng(derive_seed({seed, static_cast<std::uint64_t>(stream), index}));
}

}  // namespace udn
