#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "streamkl/collision.hpp"
#include "streamkl/streaming.hpp"

namespace streamkl {

// Information-bottleneck bound on what a state can reveal about the next
// draw. For i values already drawn without replacement from [n] and a state
// carrying at most prior_info nats about them:
//   log(n/(n-i)) - (n/(n-i)) * complement_entropy_floor(log C(n,i)/n - prior_info/n)
// clamped below at zero. Requires 0 <= i < n and prior_info >= 0. Nats.
double next_draw_info_bound(int64_t n, int64_t i, double prior_info);

// Leading-order simplification of the same bound, without its vanishing
// correction factor: (prior_info + log n) / (n * log(n/i)). Requires
// 1 <= i < n. Asymptotic; reported flagged, never certified. Nats.
double next_draw_info_leading(int64_t n, int64_t i, double prior_info);

// Non-asymptotic KL bound for a memory profile, obtained by chaining the
// per-step bounds with prior_info = s_i * log 2:
//   sum_{i=1}^{q-1} next_draw_info_bound(n, i, s_i log 2).
// The first stream step contributes nothing (the initial state is empty). Nats.
double chain_kl_bound(const MemoryProfile& profile);

// Leading-order KL upper bound, evaluated exactly as printed in base 2:
// (sum_{i=1}^{q-1} s_i + q log2 n) / (n log2(n/q)). Asymptotic. Requires q < n.
double leading_order_kl_bound(const MemoryProfile& profile);

// Variant for the regime q <= n^(1-eps) with constant eps in (0, 1):
// (sum_{i=1}^{q-1} s_i + q log2 n) / (eps n log2 n). Asymptotic.
double epsilon_regime_kl_bound(const MemoryProfile& profile, double epsilon);

// KL guaranteed achievable by the list-storing collision algorithm:
// (sum_{i=1}^{q-1} s_i - q (log2 n + 1)) / (n log2 n), clamped below at zero.
// Requires every s_i >= 1.
double construction_kl_lower_bound(const MemoryProfile& profile);

// Exact KL of the collision algorithm: -sum_i log(1 - k_i/n) over the list
// capacities k_1..k_{q-1} in effect before each of draws 2..q. Nats.
double collision_exact_kl(int64_t n, std::span<const int64_t> k);

// Every closed-form bound for one (n, q, profile) point. Values are clamped
// at zero where the formulas can go negative; each field's unit is recorded
// alongside it ("nats" for exact KL quantities, "bits-ratio" for expressions
// evaluated as printed in base 2).
struct BoundReport {
  int64_t n = 0;
  int q = 0;
  MemoryProfile profile;
  std::optional<CapacityVector> capacities;  // absent when some s_i < 1

  double chain_kl = 0;  // nats
  double leading_order = 0;
  std::optional<double> epsilon_regime;
  std::optional<double> epsilon;
  std::optional<double> construction_lower;  // absent when some s_i < 1
  bool construction_clamped = false;
  std::optional<double> collision_kl;  // nats; absent when some s_i < 1

  static constexpr const char* chain_kl_unit = "nats";
  static constexpr const char* leading_order_unit = "bits-ratio";
  static constexpr bool leading_order_asymptotic = true;
  static constexpr const char* epsilon_regime_unit = "bits-ratio";
  static constexpr bool epsilon_regime_asymptotic = true;
  static constexpr const char* construction_lower_unit = "bits-ratio";
  static constexpr const char* collision_kl_unit = "nats";
};

BoundReport make_bound_report(const MemoryProfile& profile,
                              std::optional<double> epsilon = std::nullopt);

}  // namespace streamkl
