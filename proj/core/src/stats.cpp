#include "projwalk/stats.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

namespace projwalk {

EstimateCI batch_means(std::span<const double> values, int batches) {
  EstimateCI out;
  const std::size_t n = values.size();
  if (n == 0) return out;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  out.value = mean;
  if (batches < 2 || n < static_cast<std::size_t>(2 * batches)) {
    batches = n >= 4 ? 2 : 1;
  }
  if (batches < 2) {
    out.batches = 1;
    return out;
  }
  std::vector<double> batch_mean(batches, 0.0);
  std::vector<std::size_t> batch_count(batches, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = static_cast<std::size_t>(i * static_cast<std::size_t>(batches) / n);
    batch_mean[b] += values[i];
    ++batch_count[b];
  }
  double var = 0.0;
  for (int b = 0; b < batches; ++b) {
    batch_mean[b] /= static_cast<double>(batch_count[b]);
    const double dev = batch_mean[b] - mean;
    var += dev * dev;
  }
  var /= static_cast<double>(batches - 1);
  out.half_width = 1.959963984540054 * std::sqrt(var / static_cast<double>(batches));
  out.batches = batches;
  return out;
}

WilsonInterval wilson_interval(std::int64_t hits, std::int64_t trials, double z) {
  WilsonInterval w;
  if (trials <= 0) return w;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  w.p_hat = p;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (p + z2 / (2.0 * n)) / denom;
  const double spread = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
  w.lo = center - spread;
  w.hi = center + spread;
  if (w.lo < 0.0) w.lo = 0.0;
  if (w.hi > 1.0) w.hi = 1.0;
  return w;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
  LinearFit fit;
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw std::invalid_argument("linear_fit: need >= 2 paired points");
  fit.n = n;
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / static_cast<double>(n);
  const double my = sy / static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) throw std::invalid_argument("linear_fit: x values are constant");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - fit.intercept - fit.slope * x[i];
    sse += r * r;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  if (n > 2) {
    const double s2 = sse / static_cast<double>(n - 2);
    fit.slope_se = std::sqrt(s2 / sxx);
    fit.intercept_se = std::sqrt(s2 * (1.0 / static_cast<double>(n) + mx * mx / sxx));
  }
  return fit;
}

double richardson_1_over_n(double a_n1, double n1, double a_n2, double n2) {
  return (n2 * a_n2 - n1 * a_n1) / (n2 - n1);
}

void parallel_for_index(std::int64_t count, int workers,
                        const std::function<void(std::int64_t)>& body) {
  if (count <= 0) return;
  if (workers < 1) workers = 1;
  if (workers == 1 || count < 2 * workers) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::int64_t lo = count * w / workers;
    const std::int64_t hi = count * (w + 1) / workers;
    pool.emplace_back([lo, hi, &body] {
      for (std::int64_t i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace projwalk
