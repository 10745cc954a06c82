#pragma once

#include <cstdint>
#include <random>

namespace microepi {

// splitmix64 finalizer; used to decorrelate stream indices from the master
// seed before seeding an engine.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

// Stream `index` of master seed `seed`. Distinct indices give statistically
// independent streams, and the derivation depends only on (seed, index), so
// results never depend on thread scheduling. Trajectory runners use the
// trajectory index, training uses the episode number.
inline Rng derive_stream(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t s = mix64(seed ^ mix64(index + 1));
  std::seed_seq seq{static_cast<std::uint32_t>(s),
                    static_cast<std::uint32_t>(s >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

// Uniform double in [0, 1) built from the top 53 bits of one engine output.
// Identical across platforms, unlike std::uniform_real_distribution.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) via multiply-shift bounding; one engine output.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

}  // namespace microepi
