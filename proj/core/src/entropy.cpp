#include "streamkl/entropy.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "streamkl/numeric.hpp"

namespace streamkl {

namespace {
constexpr double kLog2 = std::numbers::ln2;
constexpr double kClampWindow = 1e-12;
}  // namespace

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("binary_entropy: x outside [0, 1]");
  }
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log(x) - (1.0 - x) * std::log1p(-x);
}

double binary_entropy_inverse(double t) {
  if (!(t >= 0.0)) {
    throw std::domain_error("binary_entropy_inverse: t < 0");
  }
  if (t > kLog2) {
    if (t > kLog2 + kClampWindow) {
      throw std::domain_error("binary_entropy_inverse: t > log 2");
    }
    t = kLog2;
  }
  if (t == 0.0) return 0.0;
  if (t >= kLog2) return 0.5;

  // binary_entropy is strictly increasing on [0, 1/2]; 64 halvings shrink the
  // bracket far below the 1e-12 contract.
  double lo = 0.0, hi = 0.5;
  for (int iter = 0; iter < 64; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (binary_entropy(mid) < t) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double complement_entropy(double y) {
  if (y > 1.0) {
    throw std::domain_error("complement_entropy: y > 1");
  }
  if (y == 1.0) return 0.0;
  return -(1.0 - y) * std::log1p(-y);
}

double complement_entropy_floor(double t) {
  if (t < 0.0) return 0.0;
  if (t > kLog2 + kClampWindow) {
    throw std::domain_error("complement_entropy_floor: t > log 2");
  }
  return complement_entropy(binary_entropy_inverse(std::min(t, kLog2)));
}

double log_binomial(int64_t n, int64_t i) {
  if (n < 1 || i < 0 || i > n) {
    throw std::domain_error("log_binomial: need 0 <= i <= n, n >= 1");
  }
  int64_t m = std::min(i, n - i);
  KahanSum sum;
  for (int64_t j = 1; j <= m; ++j) {
    sum.add(std::log(static_cast<double>(n - m + j)));
    sum.add(-std::log(static_cast<double>(j)));
  }
  return sum.value();
}

double shannon_entropy(const FiniteDistribution& p) {
  KahanSum h;
  for (double v : p.probs()) {
    if (v > 0.0) h.add(-v * std::log(v));
  }
  return h.value();
}

double kl_divergence(const FiniteDistribution& p, const FiniteDistribution& q) {
  if (p.outcomes() != q.outcomes()) {
    throw std::invalid_argument("kl_divergence: distributions must share an ordered outcome set");
  }
  KahanSum kl;
  for (std::size_t i = 0; i < p.size(); ++i) {
    double pi = p.prob(i);
    if (pi == 0.0) continue;  // 0 log(0/q) = 0
    double qi = q.prob(i);
    if (qi == 0.0) {
      throw std::domain_error("kl_divergence: p not absolutely continuous w.r.t. q at outcome '" +
                              p.outcomes()[i] + "'");
    }
    kl.add(pi * std::log(pi / qi));
  }
  return kl.value();
}

double mutual_information(const JointDistribution& joint) {
  // I = H(cols) - H(cols | rows)
  KahanSum h_cols;
  for (std::size_t c = 0; c < joint.cols(); ++c) {
    KahanSum col;
    for (std::size_t r = 0; r < joint.rows(); ++r) col.add(joint.prob(r, c));
    double pc = col.value();
    if (pc > 0.0) h_cols.add(-pc * std::log(pc));
  }

  KahanSum h_cols_given_rows;
  for (std::size_t r = 0; r < joint.rows(); ++r) {
    KahanSum row;
    for (std::size_t c = 0; c < joint.cols(); ++c) row.add(joint.prob(r, c));
    double pr = row.value();
    if (pr <= 0.0) continue;
    for (std::size_t c = 0; c < joint.cols(); ++c) {
      double prc = joint.prob(r, c);
      if (prc > 0.0) h_cols_given_rows.add(-prc * std::log(prc / pr));
    }
  }

  double mi = h_cols.value() - h_cols_given_rows.value();
  return mi < 0.0 ? 0.0 : mi;
}

}  // namespace streamkl
