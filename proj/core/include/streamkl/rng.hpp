#pragma once

#include <cstdint>
#include <random>

namespace streamkl {

// splitmix64 finalizer. Used to derive independent sub-seeds so that results
// are reproducible regardless of how work is partitioned across workers.
inline uint64_t mix_seed(uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline uint64_t derive_subseed(uint64_t seed, uint64_t index) {
  return mix_seed(seed ^ mix_seed(index));
}

// Deterministic uniform source: std::mt19937_64 (its output sequence is fixed
// by the standard) combined with Lemire's bounded reduction. Fixtures produced
// from a seed are stable across platforms and compilers.
class StableRng {
 public:
  explicit StableRng(uint64_t seed) : engine_(seed) {}

  uint64_t next() { return engine_(); }

  // Unbiased uniform draw from [0, bound); bound >= 1.
  uint64_t below(uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto low = static_cast<uint64_t>(m);
    if (low < bound) {
      uint64_t threshold = (-bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        low = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace streamkl
