#include "streamkl/bounds.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "streamkl/entropy.hpp"
#include "streamkl/numeric.hpp"

namespace streamkl {

namespace {
constexpr double kLog2 = std::numbers::ln2;
}

double next_draw_info_bound(int64_t n, int64_t i, double prior_info) {
  if (n < 1 || i < 0 || i >= n) {
    throw std::domain_error("next_draw_info_bound: need 0 <= i < n");
  }
  if (!(prior_info >= 0.0)) {
    throw std::domain_error("next_draw_info_bound: prior_info must be >= 0");
  }
  double ratio = static_cast<double>(n) / static_cast<double>(n - i);
  double arg = log_binomial(n, i) / static_cast<double>(n) - prior_info / static_cast<double>(n);
  double value = std::log(ratio) - ratio * complement_entropy_floor(arg);
  return value < 0.0 ? 0.0 : value;
}

double next_draw_info_leading(int64_t n, int64_t i, double prior_info) {
  if (n < 2 || i < 1 || i >= n) {
    throw std::domain_error("next_draw_info_leading: need 1 <= i < n");
  }
  if (!(prior_info >= 0.0)) {
    throw std::domain_error("next_draw_info_leading: prior_info must be >= 0");
  }
  double nd = static_cast<double>(n);
  return (prior_info + std::log(nd)) / (nd * std::log(nd / static_cast<double>(i)));
}

double chain_kl_bound(const MemoryProfile& profile) {
  profile.validate();
  KahanSum sum;
  for (int i = 1; i <= profile.q() - 1; ++i) {
    sum.add(next_draw_info_bound(profile.n, i, static_cast<double>(profile.s[i - 1]) * kLog2));
  }
  return sum.value();
}

namespace {

double sum_plus_q_log2n(const MemoryProfile& profile) {
  return static_cast<double>(profile.sum_s_before_last()) +
         static_cast<double>(profile.q()) * std::log2(static_cast<double>(profile.n));
}

}  // namespace

double leading_order_kl_bound(const MemoryProfile& profile) {
  profile.validate();
  double nd = static_cast<double>(profile.n);
  double log_ratio = std::log2(nd / static_cast<double>(profile.q()));
  if (!(log_ratio > 0.0)) {
    throw std::domain_error("leading_order_kl_bound: requires q < n");
  }
  return sum_plus_q_log2n(profile) / (nd * log_ratio);
}

double epsilon_regime_kl_bound(const MemoryProfile& profile, double epsilon) {
  profile.validate();
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("epsilon_regime_kl_bound: epsilon must lie in (0, 1)");
  }
  double nd = static_cast<double>(profile.n);
  double limit = std::pow(nd, 1.0 - epsilon);
  // relative guard so q = n^(1-eps) evaluated in floating point is accepted
  if (static_cast<double>(profile.q()) > limit * (1.0 + 1e-9)) {
    throw std::invalid_argument("epsilon_regime_kl_bound: requires q <= n^(1-epsilon)");
  }
  return sum_plus_q_log2n(profile) / (epsilon * nd * std::log2(nd));
}

double construction_kl_lower_bound(const MemoryProfile& profile) {
  profile.validate();
  for (int si : profile.s) {
    if (si < 1) {
      throw std::invalid_argument("construction_kl_lower_bound: every s_i must be >= 1");
    }
  }
  double nd = static_cast<double>(profile.n);
  double log2n = std::log2(nd);
  double value = (static_cast<double>(profile.sum_s_before_last()) -
                  static_cast<double>(profile.q()) * (log2n + 1.0)) /
                 (nd * log2n);
  return value < 0.0 ? 0.0 : value;
}

double collision_exact_kl(int64_t n, std::span<const int64_t> k) {
  KahanSum sum;
  for (int64_t ki : k) {
    if (ki < 0 || ki >= n) {
      throw std::domain_error("collision_exact_kl: capacity out of [0, n)");
    }
    sum.add(-std::log1p(-static_cast<double>(ki) / static_cast<double>(n)));
  }
  return sum.value();
}

BoundReport make_bound_report(const MemoryProfile& profile, std::optional<double> epsilon) {
  profile.validate();
  BoundReport report;
  report.n = profile.n;
  report.q = profile.q();
  report.profile = profile;
  report.chain_kl = chain_kl_bound(profile);
  report.leading_order = leading_order_kl_bound(profile);
  if (epsilon) {
    report.epsilon = epsilon;
    report.epsilon_regime = epsilon_regime_kl_bound(profile, *epsilon);
  }

  bool all_positive_widths = true;
  for (int si : profile.s) all_positive_widths &= si >= 1;
  if (all_positive_widths) {
    CapacityVector caps = derive_capacities(profile);
    double nd = static_cast<double>(profile.n);
    double log2n = std::log2(nd);
    double raw = (static_cast<double>(profile.sum_s_before_last()) -
                  static_cast<double>(profile.q()) * (log2n + 1.0)) /
                 (nd * log2n);
    report.construction_clamped = raw < 0.0;
    report.construction_lower = raw < 0.0 ? 0.0 : raw;
    report.collision_kl = collision_exact_kl(
        profile.n, std::span<const int64_t>(caps.k.data(), caps.k.size() - 1));
    report.capacities = std::move(caps);
  }
  return report;
}

}  // namespace streamkl
