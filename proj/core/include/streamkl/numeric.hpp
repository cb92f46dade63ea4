#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace streamkl {

// Kahan-Neumaier compensated accumulator, so that validation sums over large
// supports do not drown in rounding noise.
class KahanSum {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// n * (n-1) * ... * (n-q+1); throws on overflow.
inline uint64_t falling_factorial(int64_t n, int q) {
  uint64_t r = 1;
  for (int j = 0; j < q; ++j) {
    uint64_t factor = static_cast<uint64_t>(n - j);
    if (factor != 0 && r > UINT64_MAX / factor) {
      throw std::overflow_error("falling_factorial: overflow");
    }
    r *= factor;
  }
  return r;
}

// n^q with overflow detection.
inline uint64_t pow_u64(int64_t n, int q) {
  uint64_t r = 1;
  for (int j = 0; j < q; ++j) {
    uint64_t b = static_cast<uint64_t>(n);
    if (b != 0 && r > UINT64_MAX / b) {
      throw std::overflow_error("pow_u64: overflow");
    }
    r *= b;
  }
  return r;
}

}  // namespace streamkl
