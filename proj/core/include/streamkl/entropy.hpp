#pragma once

#include <cstdint>

#include "streamkl/distribution.hpp"

namespace streamkl {

// -x log x - (1-x) log(1-x) in nats, with the convention 0 log 0 = 0.
// Throws std::domain_error outside [0, 1].
double binary_entropy(double x);

// Inverse of binary_entropy restricted to [0, 1/2], found by bisection to an
// absolute x-tolerance well below 1e-12. Accepts t in [0, log 2]; inputs at
// most 1e-12 above log 2 are clamped (rounding from log-binomial ratios),
// anything else is a domain error.
double binary_entropy_inverse(double t);

// -(1-y) log(1-y) for y <= 1, with the limit value 0 at y = 1.
double complement_entropy(double y);

// Smallest complement-entropy value consistent with a given binary entropy:
// complement_entropy(binary_entropy_inverse(t)) on [0, log 2], and 0 for
// t < 0. Nondecreasing and convex.
double complement_entropy_floor(double t);

// Exact log C(n, i) in nats, computed as a sum of logs (no approximation).
double log_binomial(int64_t n, int64_t i);

// Shannon entropy in nats.
double shannon_entropy(const FiniteDistribution& p);

// sum_x p(x) log(p(x)/q(x)) in nats, with 0 log(0/q) = 0. Requires the two
// distributions to share an ordered outcome set; throws std::domain_error if
// p puts mass where q does not (absolute continuity failure).
double kl_divergence(const FiniteDistribution& p, const FiniteDistribution& q);

// I(rows; cols) = H(cols) - H(cols | rows) from the joint, clamped at zero.
double mutual_information(const JointDistribution& joint);

}  // namespace streamkl
