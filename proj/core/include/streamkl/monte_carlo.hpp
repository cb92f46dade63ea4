#pragma once

#include <cstdint>

#include "streamkl/streaming.hpp"

namespace streamkl {

enum class Source {
  with_replacement,     // Q: i.i.d. uniform
  without_replacement,  // P: prefix of a uniform permutation
};

// Bernoulli-style estimate. For probability estimates,
// std_error = sqrt(value (1 - value) / samples).
struct Estimate {
  double value = 0;
  double std_error = 0;
  uint64_t samples = 0;
  uint64_t seed = 0;
};

// Fraction of runs whose output bit is 1 under the given source. Each sample
// uses an independently derived sub-seed, so the result is identical for any
// worker count. Throws std::invalid_argument for samples = 0.
Estimate estimate_accept(const StreamAlgorithm& alg, Source source, uint64_t samples,
                         uint64_t seed, int workers = 1);

// |accept(P) - accept(Q)| with the combined standard error.
Estimate estimate_tv_advantage(const StreamAlgorithm& alg, uint64_t samples,
                               uint64_t seed, int workers = 1);

}  // namespace streamkl
