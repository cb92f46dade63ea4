#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace streamkl {

// Result of one grid-checked scalar-function property. worst_slack is the
// minimum over the grid of (allowed side minus observed side); the check
// passes when worst_slack >= -tolerance. worst_at records the grid location
// where the minimum is attained.
struct PropertyResult {
  std::string name;
  uint64_t points = 0;
  double worst_slack = 0;
  double worst_at = 0;
  double tolerance = 0;
  bool pass = false;
};

// Grid verification of the scalar-function facts the bound formulas rest on:
//  - complement_entropy nondecreasing on [0, 1/2]
//  - complement_entropy_floor nondecreasing and midpoint-convex on [0, log 2]
//  - complement_entropy(t) >= complement_entropy_floor(binary_entropy(t)) on [0, 1]
//  - binary_entropy round trip through its inverse within 1e-10
//  - log_binomial sandwiched between its two entropy estimates for n <= stirling_max_n
// Requires grid_points >= 10.
std::vector<PropertyResult> run_function_property_suite(int grid_points = 10'000,
                                                        int stirling_max_n = 1000);

}  // namespace streamkl
