#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "streamkl/distribution.hpp"
#include "streamkl/streaming.hpp"

namespace streamkl {

// Enumeration would exceed the configured walk budget.
struct CapExceededError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Exact statistics from full enumeration under both input measures: P draws
// the q values without replacement, Q with replacement.
struct OracleResult {
  FiniteDistribution p_out;  // final-state distribution under P
  FiniteDistribution q_out;  // final-state distribution under Q
  double kl_exact = 0;       // D(p_out || q_out), nats

  // Indexed by stream step (1-based; entry 0 is fixed at zero), under P:
  //   mi_per_step[i] = I(X_i; Sigma_{i-1})
  //   mi_state[i]    = I((X_1..X_i); Sigma_i)
  std::vector<double> mi_per_step;
  std::vector<double> mi_state;

  uint64_t p_accept_count = 0;  // inputs whose output bit is 1
  uint64_t q_accept_count = 0;
  uint64_t p_total = 0;  // n (n-1) ... (n-q+1)
  uint64_t q_total = 0;  // n^q

  double p_accept() const { return static_cast<double>(p_accept_count) / static_cast<double>(p_total); }
  double q_accept() const { return static_cast<double>(q_accept_count) / static_cast<double>(q_total); }
};

// Walks every distinct-value sequence once for the P side (accumulating the
// per-step joints as integer counts along the way) and runs an exact state
// DP over all n^q sequences for the Q side. Requires n^q <= walk_cap.
OracleResult enumerate_distributions(const StreamAlgorithm& alg, uint64_t walk_cap = 10'000'000);

struct Verdict {
  bool pass = false;
  double slack = 0;
  std::string detail;
};

// Checks the accumulation bound kl_exact <= sum_i mi_per_step[i] + 1e-9;
// the returned slack is the right side minus the left.
Verdict verify_info_sum_bound(const OracleResult& r);

struct StepVerdict {
  int i = 0;          // prefix length; checks the step i+1 information
  double observed = 0;  // mi_per_step[i+1]
  double bound = 0;     // next_draw_info_bound(n, i, mi_state[i])
  double slack = 0;
  bool pass = false;
};

// Per-step bottleneck check: mi_per_step[i+1] <= bound + 1e-9 for each
// i in [0, q-1], with mi_state[0] = 0.
std::vector<StepVerdict> verify_bottleneck_bound(const OracleResult& r, int64_t n);

}  // namespace streamkl
