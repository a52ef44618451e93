#include "projwalk/montecarlo.hpp"

#include <cmath>

#include "projwalk/errors.hpp"

namespace projwalk {

namespace {

// Hot-loop walker: unit working vector plus accumulated log-scale. The sign
// of the working vector is irrelevant to every consumer (brackets take
// absolute values), so no canonicalization until a ProjPoint is materialized.
struct Walker {
  Vec v;
  double log_scale = 0.0;

  explicit Walker(const ProjPoint& x0) : v(x0.rep()) {}

  void step(const Matrix& g) {
    v = g.mat() * v;
    const double n = v.norm();
    v /= n;
    log_scale += std::log(n);
  }
};

}  // namespace

void PathConfig::validate() const {
  if (n < 1) throw ConfigError("path config: n must be >= 1");
  if (replicas < 1) throw ConfigError("path config: replicas must be >= 1");
  if (burn_in < 0) throw ConfigError("path config: burn_in must be >= 0");
  if (x0.dim() == 0) throw ConfigError("path config: start point not set");
}

std::vector<PathState> simulate_path(const MatrixEnsemble& ensemble, const ProjPoint& x0,
                                     std::int64_t n, RngStream& rng) {
  std::vector<PathState> out;
  out.reserve(static_cast<std::size_t>(n));
  Walker w(x0);
  for (std::int64_t k = 0; k < n; ++k) {
    w.step(ensemble.sample(rng));
    out.push_back(PathState{project(w.v), w.log_scale});
  }
  return out;
}

EstimateCI estimate_lyapunov(const MatrixEnsemble& ensemble, const PathConfig& config) {
  config.validate();
  std::vector<double> values(static_cast<std::size_t>(config.replicas));
  parallel_for_index(config.replicas, config.workers, [&](std::int64_t r) {
    RngStream rng(config.seed, stream_domain::kPath | static_cast<std::uint64_t>(r));
    Walker w(config.x0);
    for (std::int64_t k = 0; k < config.n; ++k) w.step(ensemble.sample(rng));
    values[static_cast<std::size_t>(r)] = w.log_scale / static_cast<double>(config.n);
  });
  return batch_means(values);
}

VarianceEstimate estimate_variance(const MatrixEnsemble& ensemble, const PathConfig& config,
                                   double lambda) {
  config.validate();
  std::vector<double> values(static_cast<std::size_t>(config.replicas));
  parallel_for_index(config.replicas, config.workers, [&](std::int64_t r) {
    RngStream rng(config.seed, stream_domain::kVariance | static_cast<std::uint64_t>(r));
    Walker w(config.x0);
    for (std::int64_t k = 0; k < config.n; ++k) w.step(ensemble.sample(rng));
    const double centered = w.log_scale - static_cast<double>(config.n) * lambda;
    values[static_cast<std::size_t>(r)] = centered * centered / static_cast<double>(config.n);
  });
  const EstimateCI ci = batch_means(values);
  VarianceEstimate est;
  est.value = ci.value;
  est.half_width = ci.half_width;
  est.consistent_with_zero = ci.value <= ci.half_width + 1e-12;
  return est;
}

EmpiricalMeasure empirical_stationary(const MatrixEnsemble& ensemble, const PathConfig& config) {
  config.validate();
  const auto kept = static_cast<std::size_t>(config.n);
  EmpiricalMeasure measure;
  measure.points.resize(kept * static_cast<std::size_t>(config.replicas), ProjPoint{});
  parallel_for_index(config.replicas, config.workers, [&](std::int64_t r) {
    RngStream rng(config.seed, stream_domain::kStationary | static_cast<std::uint64_t>(r));
    Walker w(config.x0);
    for (std::int64_t k = 0; k < config.burn_in; ++k) w.step(ensemble.sample(rng));
    for (std::size_t k = 0; k < kept; ++k) {
      w.step(ensemble.sample(rng));
      measure.points[static_cast<std::size_t>(r) * kept + k] = project(w.v);
    }
  });
  measure.weights.assign(measure.points.size(), 1.0 / static_cast<double>(measure.points.size()));
  return measure;
}

TailReport fit_exceedance(const std::vector<double>& delta_values, double eps, int k_max) {
  if (k_max < 1) throw ConfigError("fit_exceedance: k_max must be >= 1");
  if (!(eps > 0.0)) throw ConfigError("fit_exceedance: eps must be positive");
  TailReport report;
  report.eps = eps;
  report.k_max = k_max;
  report.replicas = static_cast<std::int64_t>(delta_values.size());
  report.k.resize(static_cast<std::size_t>(k_max) + 1);
  report.counts.assign(static_cast<std::size_t>(k_max) + 1, 0);
  // One pass: each value contributes to every k with delta <= e^{-eps k},
  // i.e. all k up to floor(-log(delta)/eps). Nesting makes counts exact and
  // monotone without regularization.
  for (double d : delta_values) {
    const double l = d > 0.0 ? -std::log(d) : 1e9;
    int hi = l >= 0.0 ? static_cast<int>(l / eps) : -1;
    if (hi > k_max) hi = k_max;
    for (int k = 0; k <= hi; ++k) ++report.counts[static_cast<std::size_t>(k)];
  }
  report.counts[0] = report.replicas;  // delta <= 1 always
  report.prob.resize(report.counts.size());
  for (std::size_t i = 0; i < report.counts.size(); ++i) {
    report.k[i] = static_cast<int>(i);
    report.prob[i] =
        static_cast<double>(report.counts[i]) / static_cast<double>(report.replicas);
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (int k = 1; k <= k_max; ++k) {
    const auto c = report.counts[static_cast<std::size_t>(k)];
    if (c >= 100) {
      xs.push_back(static_cast<double>(k));
      ys.push_back(std::log(static_cast<double>(c) / static_cast<double>(report.replicas)));
    }
  }
  if (xs.size() < 3) {
    throw InsufficientCountsError("fit_exceedance: fewer than 3 levels with >= 100 events");
  }
  const LinearFit fit = linear_fit(xs, ys);
  report.c0_hat = -fit.slope;
  report.c0_se = fit.slope_se;
  report.t_stat = fit.slope_se > 0.0 ? report.c0_hat / fit.slope_se : 0.0;
  report.points_in_fit = static_cast<int>(xs.size());
  return report;
}

TailReport regularity_tail(const MatrixEnsemble& ensemble, const ProjPoint& x0,
                           const DualProjPoint& y, std::int64_t n, double eps, int k_max,
                           std::int64_t replicas, std::uint64_t seed, int workers) {
  if (n < k_max) throw ConfigError("regularity_tail: need n >= k_max");
  std::vector<double> deltas(static_cast<std::size_t>(replicas));
  const Vec f = y.rep();
  parallel_for_index(replicas, workers, [&](std::int64_t r) {
    RngStream rng(seed, stream_domain::kTail | static_cast<std::uint64_t>(r));
    Walker w(x0);
    for (std::int64_t k = 0; k < n; ++k) w.step(ensemble.sample(rng));
    deltas[static_cast<std::size_t>(r)] = std::abs(f.dot(w.v));
  });
  return fit_exceedance(deltas, eps, k_max);
}

LltCount coefficient_llt_count(const MatrixEnsemble& ensemble, const DualProjPoint& y,
                               const ProjPoint& x0, double a1, double a2, std::int64_t n,
                               std::int64_t replicas, double lambda, double sigma,
                               std::uint64_t seed, int workers) {
  if (!(a1 <= a2)) throw ConfigError("coefficient_llt_count: need a1 <= a2");
  if (!(sigma > 0.0)) throw DegenerateSigmaError("coefficient_llt_count: sigma must be > 0");
  const Vec f = y.rep();
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(replicas), 0);
  parallel_for_index(replicas, workers, [&](std::int64_t r) {
    RngStream rng(seed, stream_domain::kLltCount | static_cast<std::uint64_t>(r));
    Walker w(x0);
    for (std::int64_t k = 0; k < n; ++k) w.step(ensemble.sample(rng));
    // log|<f, G_n v>| = sigma(G_n, x) + log delta(y, G_n x)
    const double coeff_log = w.log_scale + log_delta_clamped(std::abs(f.dot(w.v)));
    const double centered = coeff_log - static_cast<double>(n) * lambda;
    hit[static_cast<std::size_t>(r)] = centered >= a1 && centered <= a2 ? 1 : 0;
  });
  LltCount out;
  out.replicas = replicas;
  for (auto h : hit) out.hits += h;
  out.p_hat = static_cast<double>(out.hits) / static_cast<double>(replicas);
  out.target = (a2 - a1) / (sigma * std::sqrt(2.0 * M_PI * static_cast<double>(n)));
  const WilsonInterval w = wilson_interval(out.hits, replicas);
  if (out.target > 0.0) {
    out.ratio = out.p_hat / out.target;
    out.ratio_lo = w.lo / out.target;
    out.ratio_hi = w.hi / out.target;
  }
  return out;
}

}  // namespace projwalk
