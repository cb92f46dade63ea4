#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "streamkl/rng.hpp"

namespace streamkl {

// Smallest L with 2^L >= n, for n >= 1.
int ceil_log2(int64_t n);

// Per-step state bit budgets of a one-pass algorithm reading q values from an
// alphabet of size n. The stream length is q = s.size(); valid profiles have
// n >= 2, 1 <= q < n and every s_i >= 0.
struct MemoryProfile {
  int64_t n = 0;
  std::vector<int> s;

  int q() const { return static_cast<int>(s.size()); }
  int64_t sum_s_before_last() const;  // s_1 + ... + s_{q-1}
  void validate() const;              // throws std::invalid_argument
  std::string to_string() const;      // "s1|s2|...|sq"
};

// Width-normalized budgets: s'_1 = min(s_1, ceil(log2 n)) and
// s'_{i+1} = min(s_{i+1}, s'_i + ceil(log2 n)). A state never needs to grow
// by more than one input symbol per step, so the normalized algorithm can
// simulate the original one exactly.
MemoryProfile normalize_profile(const MemoryProfile& raw);

// Text format: "const:<s>" (q copies, q taken from q_hint) or a
// comma-separated list "s1,s2,...,sq" (q_hint, when >= 0, must match).
MemoryProfile parse_memory_spec(const std::string& spec, int64_t n, int q_hint = -1);

// Fixed-width bit string, width <= 64. Bits are read most-significant first:
// the "first" bit of a state of width w is bit w-1 of `bits`.
struct StreamState {
  uint64_t bits = 0;
  int width = 0;

  bool operator==(const StreamState&) const = default;
  int first_bit() const { return width == 0 ? 0 : static_cast<int>((bits >> (width - 1)) & 1u); }
  std::string to_string() const;  // e.g. "101" (empty for width 0)
};

// Deterministic streaming step contract: sigma_i = step(i, sigma_{i-1}, x_i)
// where sigma_0 is the empty state and |sigma_i| = s_i exactly.
class StreamAlgorithm {
 public:
  explicit StreamAlgorithm(MemoryProfile profile);
  virtual ~StreamAlgorithm() = default;

  const MemoryProfile& profile() const { return profile_; }

  // i is 1-based; prev has width s_{i-1} (zero for i = 1); x in [0, n).
  virtual StreamState step(int i, StreamState prev, int64_t x) const = 0;

  // Decision bit of a final state. Defaults to the first bit (zero for empty
  // states); algorithms that decide overload as needed.
  virtual int output_bit(StreamState final_state) const { return final_state.first_bit(); }

 protected:
  MemoryProfile profile_;
};

// Runs the q steps from the empty state, verifying after each step that the
// emitted width matches the profile; a mismatch throws identifying the step.
StreamState run_stream(const StreamAlgorithm& alg, std::span<const int64_t> x);

// q i.i.d. uniform draws from [0, n). Deterministic given the seed.
std::vector<int64_t> sample_with_replacement(int64_t n, int q, uint64_t seed);

// First q entries of a uniform random permutation of [0, n); requires q < n.
// Rejection against a seen-set for q <= n/2, sparse partial Fisher-Yates
// otherwise, so expected work is O(q) in both regimes.
std::vector<int64_t> sample_without_replacement(int64_t n, int q, uint64_t seed);

// Table-driven algorithm whose transitions are drawn uniformly over the valid
// next states; reproducible from the seed. The total number of table entries,
// sum_i 2^{s_{i-1}} * n, must not exceed table_cap.
class TableAlgorithm : public StreamAlgorithm {
 public:
  TableAlgorithm(MemoryProfile profile, uint64_t seed, uint64_t table_cap);
  StreamState step(int i, StreamState prev, int64_t x) const override;

  // tables()[i-1][prev_bits * n + x] is the bits of sigma_i.
  const std::vector<std::vector<uint64_t>>& tables() const { return tables_; }

 private:
  std::vector<std::vector<uint64_t>> tables_;
};

std::unique_ptr<TableAlgorithm> random_table_algorithm(const MemoryProfile& profile,
                                                       uint64_t seed,
                                                       uint64_t table_cap = 1'000'000);

// Ignores its input and emits the all-zero state of the required width.
std::unique_ptr<StreamAlgorithm> constant_algorithm(MemoryProfile profile);

}  // namespace streamkl
