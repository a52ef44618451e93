#pragma once

#include <cstdint>
#include <vector>

#include "projwalk/ensemble.hpp"
#include "projwalk/projective.hpp"

namespace projwalk {

// Weighted point cloud on projective space approximating a stationary or
// eigen measure.
struct EmpiricalMeasure {
  std::vector<ProjPoint> points;
  std::vector<double> weights;

  int dim() const { return points.empty() ? 0 : points.front().dim(); }
  std::size_t size() const { return points.size(); }

  static EmpiricalMeasure uniform(std::vector<ProjPoint> pts);
  // Throws ConfigError unless weights are nonnegative and sum to 1 within
  // 1e-12 (points carry their own finiteness guarantee).
  void validate() const;

  // Effective sample size 1 / sum(w_i^2), used for binomial-style bands on
  // weighted masses.
  double effective_samples() const;
};

// sum_i w_i delta(y, x_i)^{-alpha}. fraction_small, when given, receives the
// weight of points with delta < 1e-8, which dominate the sum if regularity
// fails.
double holder_moment(const EmpiricalMeasure& measure, const DualProjPoint& y, double alpha,
                     double* fraction_small = nullptr);

// One mu-step pushforward: every point moves by an independent draw.
EmpiricalMeasure push_forward(const MatrixEnsemble& ensemble, const EmpiricalMeasure& measure,
                              std::uint64_t seed);

// sup over a dictionary of 1-Lipschitz bracket functions x -> delta(y_j, x)
// of |m1(f) - m2(f)|. A lower bound on the bounded-Lipschitz distance; used
// as the stationarity diagnostic.
double lipschitz_discrepancy(const EmpiricalMeasure& m1, const EmpiricalMeasure& m2,
                             int directions, std::uint64_t seed);

}  // namespace projwalk
