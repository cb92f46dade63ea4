#include "streamkl/distribution.hpp"

#include <stdexcept>
#include <unordered_set>

#include "streamkl/numeric.hpp"

namespace streamkl {

namespace {

constexpr double kSumTolerance = 1e-12;

void check_labels_distinct(const std::vector<std::string>& labels, const char* what) {
  std::unordered_set<std::string_view> seen;
  seen.reserve(labels.size());
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw std::invalid_argument(std::string(what) + ": duplicate label '" + l + "'");
    }
  }
}

void check_probs(const std::vector<double>& probs, const char* what) {
  KahanSum total;
  for (double p : probs) {
    if (!(p >= 0.0)) {
      throw std::invalid_argument(std::string(what) + ": negative probability");
    }
    total.add(p);
  }
  if (std::abs(total.value() - 1.0) > kSumTolerance) {
    throw std::invalid_argument(std::string(what) + ": probabilities sum to " +
                                std::to_string(total.value()) + ", not 1");
  }
}

std::vector<double> probs_from_counts(std::span<const uint64_t> counts, uint64_t denominator,
                                      const char* what) {
  if (denominator == 0) {
    throw std::invalid_argument(std::string(what) + ": zero denominator");
  }
  uint64_t total = 0;
  std::vector<double> probs(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    total += counts[i];
    probs[i] = static_cast<double>(counts[i]) / static_cast<double>(denominator);
  }
  if (total != denominator) {
    throw std::invalid_argument(std::string(what) + ": counts sum to " + std::to_string(total) +
                                ", expected " + std::to_string(denominator));
  }
  return probs;
}

}  // namespace

FiniteDistribution::FiniteDistribution(std::vector<std::string> outcomes,
                                       std::vector<double> probs)
    : outcomes_(std::move(outcomes)), probs_(std::move(probs)) {
  if (outcomes_.size() != probs_.size() || outcomes_.empty()) {
    throw std::invalid_argument("FiniteDistribution: outcome/probability size mismatch");
  }
  check_labels_distinct(outcomes_, "FiniteDistribution");
  check_probs(probs_, "FiniteDistribution");
}

FiniteDistribution FiniteDistribution::from_counts(std::vector<std::string> outcomes,
                                                   std::span<const uint64_t> counts,
                                                   uint64_t denominator) {
  return FiniteDistribution(std::move(outcomes),
                            probs_from_counts(counts, denominator, "FiniteDistribution"));
}

JointDistribution::JointDistribution(std::vector<std::string> row_labels,
                                     std::vector<std::string> col_labels,
                                     std::vector<double> probs)
    : row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      probs_(std::move(probs)) {
  if (row_labels_.empty() || col_labels_.empty() ||
      probs_.size() != row_labels_.size() * col_labels_.size()) {
    throw std::invalid_argument("JointDistribution: matrix shape mismatch");
  }
  check_labels_distinct(row_labels_, "JointDistribution rows");
  check_labels_distinct(col_labels_, "JointDistribution cols");
  check_probs(probs_, "JointDistribution");
}

JointDistribution JointDistribution::from_counts(std::vector<std::string> row_labels,
                                                 std::vector<std::string> col_labels,
                                                 std::span<const uint64_t> counts,
                                                 uint64_t denominator) {
  return JointDistribution(std::move(row_labels), std::move(col_labels),
                           probs_from_counts(counts, denominator, "JointDistribution"));
}

FiniteDistribution JointDistribution::marginal_rows() const {
  std::vector<double> probs(rows(), 0.0);
  for (std::size_t r = 0; r < rows(); ++r) {
    KahanSum sum;
    for (std::size_t c = 0; c < cols(); ++c) sum.add(prob(r, c));
    probs[r] = sum.value();
  }
  return FiniteDistribution(row_labels_, std::move(probs));
}

FiniteDistribution JointDistribution::marginal_cols() const {
  std::vector<double> probs(cols(), 0.0);
  for (std::size_t c = 0; c < cols(); ++c) {
    KahanSum sum;
    for (std::size_t r = 0; r < rows(); ++r) sum.add(prob(r, c));
    probs[c] = sum.value();
  }
  return FiniteDistribution(col_labels_, std::move(probs));
}

}  // namespace streamkl
