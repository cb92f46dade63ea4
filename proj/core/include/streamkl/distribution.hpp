#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace streamkl {

// Probability vector over an explicit finite outcome set. Construction
// validates: entries nonnegative, total within 1e-12 of one, labels distinct.
class FiniteDistribution {
 public:
  FiniteDistribution(std::vector<std::string> outcomes, std::vector<double> probs);

  // Exact-count construction: probs[i] = counts[i] / denominator. The counts
  // must sum to the denominator.
  static FiniteDistribution from_counts(std::vector<std::string> outcomes,
                                        std::span<const uint64_t> counts,
                                        uint64_t denominator);

  std::size_t size() const { return probs_.size(); }
  const std::vector<std::string>& outcomes() const { return outcomes_; }
  const std::vector<double>& probs() const { return probs_; }
  double prob(std::size_t i) const { return probs_[i]; }

 private:
  std::vector<std::string> outcomes_;
  std::vector<double> probs_;
};

// Joint probabilities over (row, col) label pairs; row-major matrix with the
// same validation rules as FiniteDistribution.
class JointDistribution {
 public:
  JointDistribution(std::vector<std::string> row_labels,
                    std::vector<std::string> col_labels,
                    std::vector<double> probs);

  static JointDistribution from_counts(std::vector<std::string> row_labels,
                                       std::vector<std::string> col_labels,
                                       std::span<const uint64_t> counts,
                                       uint64_t denominator);

  std::size_t rows() const { return row_labels_.size(); }
  std::size_t cols() const { return col_labels_.size(); }
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }
  double prob(std::size_t r, std::size_t c) const { return probs_[r * cols() + c]; }
  const std::vector<double>& probs() const { return probs_; }

  FiniteDistribution marginal_rows() const;
  FiniteDistribution marginal_cols() const;

 private:
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  std::vector<double> probs_;
};

}  // namespace streamkl
