#pragma once

#include <memory>

#include "streamkl/streaming.hpp"

namespace streamkl {

// Per-step list capacities of the collision detector: k_1 <= 1,
// k_{i+1} <= k_i + 1, k_i <= i, and 1 + k_i * ceil(log2 n) <= s_i.
struct CapacityVector {
  std::vector<int64_t> k;

  int q() const { return static_cast<int>(k.size()); }
  std::string to_string() const;  // "k1|k2|...|kq"
};

// k_i = floor((s_i - 1) / ceil(log2 n)), then a forward pass clamps to the
// growth constraints k_1 <= 1 and k_{i+1} <= k_i + 1. Requires every s_i >= 1
// (one flag bit is always needed).
CapacityVector derive_capacities(const MemoryProfile& profile);

// List-storing collision detector. States are (0, y_1, ..., y_k): a flag bit
// followed by k slots of ceil(log2 n) bits each (big-endian values, zero
// padding up to s_i). Seeing a stored value again moves to the absorbing
// all-ones state 1^{s_i}. When the capacity grows the new value is appended;
// otherwise the list is truncated to its first k_i entries and the new value
// is discarded.
class CollisionAlgorithm : public StreamAlgorithm {
 public:
  explicit CollisionAlgorithm(MemoryProfile profile);

  const CapacityVector& capacities() const { return capacities_; }
  StreamState step(int i, StreamState prev, int64_t x) const override;

 private:
  StreamState all_ones(int width) const;

  CapacityVector capacities_;
  int slot_bits_;
};

std::unique_ptr<CollisionAlgorithm> make_collision_algorithm(MemoryProfile profile);

// Acceptance probability under i.i.d. uniform input:
// 1 - prod_{i=1}^{q-1} (1 - k_i/n). Domain error if any k_i >= n.
double analytic_accept_probability(int64_t n, const CapacityVector& k);

}  // namespace streamkl
