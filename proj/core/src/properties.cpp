#include "streamkl/properties.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "streamkl/entropy.hpp"

namespace streamkl {

namespace {

constexpr double kLog2 = std::numbers::ln2;
constexpr double kGridTolerance = 1e-12;
constexpr double kRoundTripTolerance = 1e-10;

struct WorstTracker {
  double slack = std::numeric_limits<double>::infinity();
  double at = 0;

  void update(double s, double where) {
    if (s < slack) {
      slack = s;
      at = where;
    }
  }
};

PropertyResult finish(std::string name, uint64_t points, const WorstTracker& worst,
                      double tolerance) {
  PropertyResult r;
  r.name = std::move(name);
  r.points = points;
  r.worst_slack = worst.slack;
  r.worst_at = worst.at;
  r.tolerance = tolerance;
  r.pass = worst.slack >= -tolerance;
  return r;
}

// Nondecreasing against the running maximum: equivalent to checking every
// ordered pair on the grid.
PropertyResult check_nondecreasing(std::string name, const std::vector<double>& xs,
                                   const std::vector<double>& ys) {
  WorstTracker worst;
  double running_max = ys[0];
  for (std::size_t j = 1; j < xs.size(); ++j) {
    worst.update(ys[j] - running_max, xs[j]);
    running_max = std::max(running_max, ys[j]);
  }
  return finish(std::move(name), xs.size(), worst, kGridTolerance);
}

}  // namespace

std::vector<PropertyResult> run_function_property_suite(int grid_points, int stirling_max_n) {
  if (grid_points < 10) {
    throw std::invalid_argument("run_function_property_suite: grid resolution must be >= 10");
  }
  const int m = grid_points;
  std::vector<PropertyResult> out;

  // complement_entropy nondecreasing on [0, 1/2]
  {
    std::vector<double> xs(m), ys(m);
    for (int j = 0; j < m; ++j) {
      xs[j] = 0.5 * static_cast<double>(j) / static_cast<double>(m - 1);
      ys[j] = complement_entropy(xs[j]);
    }
    out.push_back(check_nondecreasing("complement_entropy nondecreasing on [0,1/2]", xs, ys));
  }

  // complement_entropy_floor on [0, log 2]: nondecreasing, plus midpoint
  // convexity over every grid pair. Midpoints of grid points land on the
  // half-step grid, so one precomputation covers all pairs.
  {
    const double h = kLog2 / static_cast<double>(m - 1);
    std::vector<double> ts(m), phi(m);
    std::vector<double> half(2 * m - 1);
    for (int l = 0; l < 2 * m - 1; ++l) {
      half[l] = complement_entropy_floor(std::min(static_cast<double>(l) * (h / 2), kLog2));
    }
    for (int j = 0; j < m; ++j) {
      ts[j] = static_cast<double>(j) * h;
      phi[j] = half[2 * j];
    }
    out.push_back(check_nondecreasing("complement_entropy_floor nondecreasing on [0,log2]", ts, phi));

    WorstTracker worst;
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        worst.update(0.5 * (phi[a] + phi[b]) - half[a + b], 0.5 * (ts[a] + ts[b]));
      }
    }
    uint64_t pairs = static_cast<uint64_t>(m) * (m - 1) / 2;
    out.push_back(finish("complement_entropy_floor midpoint convexity on [0,log2]", pairs, worst,
                         kGridTolerance));
  }

  // complement_entropy(t) >= complement_entropy_floor(binary_entropy(t)) on [0, 1]
  {
    WorstTracker worst;
    for (int j = 0; j < m; ++j) {
      double t = static_cast<double>(j) / static_cast<double>(m - 1);
      worst.update(complement_entropy(t) - complement_entropy_floor(binary_entropy(t)), t);
    }
    out.push_back(finish("complement_entropy dominates its floor of binary_entropy on [0,1]",
                         static_cast<uint64_t>(m), worst, kGridTolerance));
  }

  // round trip binary_entropy(binary_entropy_inverse(t)) = t on [0, log 2]
  {
    WorstTracker worst;
    for (int j = 0; j < m; ++j) {
      double t = std::min(kLog2 * static_cast<double>(j) / static_cast<double>(m - 1), kLog2);
      double dev = std::abs(binary_entropy(binary_entropy_inverse(t)) - t);
      worst.update(kRoundTripTolerance - dev, t);
    }
    out.push_back(finish("binary_entropy inverse round trip within 1e-10",
                         static_cast<uint64_t>(m), worst, 0.0));
  }

  // log C(n, i) between its two binary-entropy estimates for 1 <= i < n
  if (stirling_max_n >= 2) {
    WorstTracker worst_lower, worst_upper;
    uint64_t points = 0;
    for (int64_t n = 2; n <= stirling_max_n; ++n) {
      for (int64_t i = 1; i < n; ++i) {
        double alpha = static_cast<double>(i) / static_cast<double>(n);
        double nh = static_cast<double>(n) * binary_entropy(alpha);
        double spread = static_cast<double>(i) * (1.0 - alpha);
        double lower = nh - 0.5 * std::log(8.0 * spread);
        double upper = nh - 0.5 * std::log(2.0 * std::numbers::pi * spread);
        double exact = log_binomial(n, i);
        double where = static_cast<double>(n * 100000 + i);
        worst_lower.update(exact - lower, where);
        worst_upper.update(upper - exact, where);
        ++points;
      }
    }
    out.push_back(finish("log_binomial above its lower entropy estimate", points, worst_lower, 0.0));
    out.push_back(finish("log_binomial below its upper entropy estimate", points, worst_upper, 0.0));
  }

  return out;
}

}  // namespace streamkl
