#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace projwalk {

struct EstimateCI {
  double value = 0.0;
  double half_width = 0.0;
  int batches = 0;
};

// Mean with a batch-means confidence interval (95%, normal quantile). The
// batch partition is by index, so the result does not depend on how the
// values were produced across workers.
EstimateCI batch_means(std::span<const double> values, int batches = 30);

struct WilsonInterval {
  double p_hat = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// 95% Wilson score interval for a binomial proportion.
WilsonInterval wilson_interval(std::int64_t hits, std::int64_t trials, double z = 1.959963984540054);

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  double intercept_se = 0.0;
  double slope_se = 0.0;
  double r_squared = 0.0;
  std::size_t n = 0;
};

// Ordinary least squares y = intercept + slope * x with standard errors.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

// Removes the 1/n term from two estimates a(n) = a + c/n + o(1/n).
double richardson_1_over_n(double a_n1, double n1, double a_n2, double n2);

// Runs body(i) for i in [0, count). Work is split into contiguous index
// blocks per worker; callers own any output slots, so results are identical
// for every worker count.
void parallel_for_index(std::int64_t count, int workers,
                        const std::function<void(std::int64_t)>& body);

}  // namespace projwalk
