#include "streamkl/collision.hpp"

#include <algorithm>
#include <stdexcept>

namespace streamkl {

std::string CapacityVector::to_string() const {
  std::string out;
  for (int i = 0; i < q(); ++i) {
    if (i) out += '|';
    out += std::to_string(k[i]);
  }
  return out;
}

CapacityVector derive_capacities(const MemoryProfile& profile) {
  profile.validate();
  int slot_bits = ceil_log2(profile.n);
  CapacityVector caps;
  caps.k.resize(profile.q());
  for (int i = 0; i < profile.q(); ++i) {
    if (profile.s[i] < 1) {
      throw std::invalid_argument("derive_capacities: every state width must be >= 1");
    }
    caps.k[i] = (profile.s[i] - 1) / slot_bits;
  }
  // Forward pass for the growth constraints; k_i <= i then follows by induction.
  for (int i = 0; i < profile.q(); ++i) {
    caps.k[i] = std::min(caps.k[i], i == 0 ? int64_t{1} : caps.k[i - 1] + 1);
  }
  return caps;
}

CollisionAlgorithm::CollisionAlgorithm(MemoryProfile profile)
    : StreamAlgorithm(std::move(profile)),
      capacities_(derive_capacities(profile_)),
      slot_bits_(ceil_log2(profile_.n)) {
  for (int i = 0; i < profile_.q(); ++i) {
    if (1 + capacities_.k[i] * slot_bits_ > profile_.s[i]) {
      throw std::logic_error("CollisionAlgorithm: list content would not fit the state width");
    }
  }
}

StreamState CollisionAlgorithm::all_ones(int width) const {
  uint64_t bits = width == 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
  return {bits, width};
}

StreamState CollisionAlgorithm::step(int i, StreamState prev, int64_t x) const {
  const int width = profile_.s[i - 1];
  const int64_t k_now = capacities_.k[i - 1];

  auto slot_shift = [&](int width_here, int64_t slot) {
    // flag occupies the first bit; slot j sits right after slot j-1
    return width_here - 1 - static_cast<int>(slot + 1) * slot_bits_;
  };

  if (i == 1) {
    uint64_t bits = 0;
    if (k_now == 1) bits = static_cast<uint64_t>(x) << slot_shift(width, 0);
    return {bits, width};
  }

  const int prev_width = profile_.s[i - 2];
  if (((prev.bits >> (prev_width - 1)) & 1u) != 0) {
    return all_ones(width);  // the flag state absorbs
  }

  const int64_t k_prev = capacities_.k[i - 2];
  const uint64_t slot_mask = (uint64_t{1} << slot_bits_) - 1;
  for (int64_t j = 0; j < k_prev; ++j) {
    int64_t stored = static_cast<int64_t>((prev.bits >> slot_shift(prev_width, j)) & slot_mask);
    if (stored == x) return all_ones(width);
  }

  uint64_t bits = 0;
  int64_t keep = std::min(k_prev, k_now);
  for (int64_t j = 0; j < keep; ++j) {
    uint64_t stored = (prev.bits >> slot_shift(prev_width, j)) & slot_mask;
    bits |= stored << slot_shift(width, j);
  }
  if (k_now == k_prev + 1) {
    bits |= static_cast<uint64_t>(x) << slot_shift(width, k_prev);
  }
  return {bits, width};
}

std::unique_ptr<CollisionAlgorithm> make_collision_algorithm(MemoryProfile profile) {
  return std::make_unique<CollisionAlgorithm>(std::move(profile));
}

double analytic_accept_probability(int64_t n, const CapacityVector& k) {
  for (int64_t ki : k.k) {
    if (ki < 0 || ki >= n) {
      throw std::domain_error("analytic_accept_probability: capacity out of [0, n)");
    }
  }
  // A collision at draw i is checked against the k_{i-1} values stored so
  // far, so the last capacity never contributes a factor.
  double keep = 1.0;
  for (int i = 0; i + 1 < k.q(); ++i) {
    keep *= 1.0 - static_cast<double>(k.k[i]) / static_cast<double>(n);
  }
  return 1.0 - keep;
}

}  // namespace streamkl
