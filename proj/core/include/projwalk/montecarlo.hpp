#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "projwalk/empirical.hpp"
#include "projwalk/ensemble.hpp"
#include "projwalk/projective.hpp"
#include "projwalk/rng.hpp"
#include "projwalk/stats.hpp"

namespace projwalk {

struct PathConfig {
  std::int64_t n = 1000;
  std::int64_t replicas = 1;
  std::int64_t burn_in = 200;
  std::uint64_t seed = 0;
  ProjPoint x0;
  int workers = 1;

  void validate() const;
};

struct PathState {
  ProjPoint x;       // G_k x0
  double log_norm;   // sigma(G_k, x0), accumulated by cocycle additivity
};

// Length-n trajectory of the projective chain with its running cocycle. The
// working vector is renormalized each step; the scalar is accumulated
// separately, so there is no overflow for any n.
std::vector<PathState> simulate_path(const MatrixEnsemble& ensemble, const ProjPoint& x0,
                                     std::int64_t n, RngStream& rng);

// Ergodic average sigma(G_n, x0)/n over replicas with a batch-means CI.
EstimateCI estimate_lyapunov(const MatrixEnsemble& ensemble, const PathConfig& config);

struct VarianceEstimate {
  double value = 0.0;
  double half_width = 0.0;
  // set when the estimate cannot be distinguished from zero at the CI
  bool consistent_with_zero = false;
};

// (sigma(G_n, x0) - n*lambda)^2 / n averaged over replicas.
VarianceEstimate estimate_variance(const MatrixEnsemble& ensemble, const PathConfig& config,
                                   double lambda);

// Post-burn-in chain states pooled over replicas, config.n kept per replica.
EmpiricalMeasure empirical_stationary(const MatrixEnsemble& ensemble, const PathConfig& config);

struct TailReport {
  double eps = 0.0;
  int k_max = 0;
  std::int64_t replicas = 0;
  std::vector<int> k;             // 0..k_max
  std::vector<std::int64_t> counts;  // #{delta(y, G_n x) <= e^{-eps k}}, exact
  std::vector<double> prob;       // counts / replicas, nonincreasing by nesting
  double c0_hat = 0.0;            // fitted decay rate of log prob in k
  double c0_se = 0.0;
  double t_stat = 0.0;
  int points_in_fit = 0;
};

// Exceedance counting and decay fit for precomputed bracket values. Only k
// with at least 100 events enter the fit; fewer than three such k throws
// InsufficientCountsError.
TailReport fit_exceedance(const std::vector<double>& delta_values, double eps, int k_max);

// Samples delta(y, G_n x0) over replicas and fits the exceedance decay.
TailReport regularity_tail(const MatrixEnsemble& ensemble, const ProjPoint& x0,
                           const DualProjPoint& y, std::int64_t n, double eps, int k_max,
                           std::int64_t replicas, std::uint64_t seed, int workers = 1);

struct LltCount {
  double p_hat = 0.0;    // fraction of replicas in [a1, a2]
  double target = 0.0;   // (a2 - a1) / (sigma sqrt(2 pi n))
  double ratio = 0.0;
  double ratio_lo = 0.0;  // Wilson interval of p_hat divided by target
  double ratio_hi = 0.0;
  std::int64_t hits = 0;
  std::int64_t replicas = 0;
};

// Counts log|<f, G_n v>| - n*lambda in [a1, a2] using the decomposition into
// cocycle plus log-bracket. lambda and sigma are inputs so operator-based and
// MC-based values can be compared.
LltCount coefficient_llt_count(const MatrixEnsemble& ensemble, const DualProjPoint& y,
                               const ProjPoint& x0, double a1, double a2, std::int64_t n,
                               std::int64_t replicas, double lambda, double sigma,
                               std::uint64_t seed, int workers = 1);

}  // namespace projwalk
