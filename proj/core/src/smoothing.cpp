#include "projwalk/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace projwalk {

namespace {
constexpr double kPi = std::numbers::pi;
}

IntervalUnion IntervalUnion::interval(double a, double b) {
  return from_parts({{a, b}});
}

IntervalUnion IntervalUnion::from_parts(std::vector<std::pair<double, double>> parts) {
  for (const auto& [a, b] : parts) {
    if (!(a <= b)) throw std::invalid_argument("IntervalUnion: part with a > b");
  }
  std::sort(parts.begin(), parts.end());
  IntervalUnion u;
  for (const auto& part : parts) {
    if (!u.parts_.empty() && part.first <= u.parts_.back().second) {
      u.parts_.back().second = std::max(u.parts_.back().second, part.second);
    } else {
      u.parts_.push_back(part);
    }
  }
  return u;
}

double IntervalUnion::indicator(double u) const {
  for (const auto& [a, b] : parts_) {
    if (u < a) return 0.0;
    if (u <= b) return 1.0;
  }
  return 0.0;
}

IntervalUnion IntervalUnion::expanded(double eps) const {
  std::vector<std::pair<double, double>> out;
  out.reserve(parts_.size());
  for (const auto& [a, b] : parts_) out.emplace_back(a - eps, b + eps);
  return from_parts(std::move(out));
}

IntervalUnion IntervalUnion::shrunk(double eps) const {
  std::vector<std::pair<double, double>> out;
  for (const auto& [a, b] : parts_) {
    if (b - a >= 2.0 * eps) out.emplace_back(a + eps, b - eps);
  }
  return from_parts(std::move(out));
}

double sine_integral(double x) {
  if (x < 0.0) return -sine_integral(-x);
  if (x == 0.0) return 0.0;
  if (x <= 6.0) {
    // Alternating series sum (-1)^k x^{2k+1} / ((2k+1)(2k+1)!).
    double term = x;
    double sum = x;
    const double x2 = x * x;
    for (int k = 1; k < 60; ++k) {
      const auto two_k = static_cast<double>(2 * k);
      term *= -x2 / (two_k * (two_k + 1.0));
      const double add = term / (two_k + 1.0);
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  // E1(ix) by modified Lentz; Si(x) = pi/2 + Im E1(ix).
  const std::complex<double> z(0.0, x);
  const double fpmin = 1e-290;
  std::complex<double> b = z + 1.0;
  std::complex<double> c(1.0 / fpmin, 0.0);
  std::complex<double> d = 1.0 / b;
  std::complex<double> h = d;
  for (int i = 1; i <= 200; ++i) {
    const double a = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const std::complex<double> del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  const std::complex<double> e1 = h * std::complex<double>(std::cos(x), -std::sin(x));
  return kPi / 2.0 + e1.imag();
}

double fejer_density(double u) {
  const double au = std::abs(u);
  if (au < 1e-4) {
    const double u2 = u * u;
    return (0.5 - u2 / 24.0 + u2 * u2 / 720.0) / kPi;
  }
  return (1.0 - std::cos(u)) / (kPi * u * u);
}

double fejer_cdf(double z) {
  if (z == 0.0) return 0.5;
  const double az = std::abs(z);
  double core;
  if (az < 1e-4) {
    core = az / 2.0 - az * az * az / 72.0;
  } else {
    core = sine_integral(az) - (1.0 - std::cos(az)) / az;
  }
  const double half = core / kPi;
  return z > 0.0 ? 0.5 + half : 0.5 - half;
}

double fejer_cdf_scaled(double z, double scale) { return fejer_cdf(z / scale); }

namespace {

double cdf_mass(const IntervalUnion& u, double scale, double lo, double hi) {
  double mass = 0.0;
  for (const auto& [a, b] : u.parts()) {
    const double w_lo = std::max(lo, a);
    const double w_hi = std::min(hi, b);
    if (w_lo < w_hi) mass += fejer_cdf_scaled(w_hi, scale) - fejer_cdf_scaled(w_lo, scale);
  }
  return mass;
}

}  // namespace

double smoothed_upper(const IntervalUnion& psi, double eps, double u) {
  const IntervalUnion plus = psi.expanded(eps);
  const double scale = eps * eps;
  double out = 0.0;
  for (const auto& [a, b] : plus.parts()) {
    out += fejer_cdf_scaled(u - a, scale) - fejer_cdf_scaled(u - b, scale);
  }
  return out;
}

double smoothed_lower(const IntervalUnion& psi, double eps, double u) {
  const IntervalUnion minus = psi.shrunk(eps);
  const double scale = eps * eps;
  double out = 0.0;
  for (const auto& [a, b] : minus.parts()) {
    out += fejer_cdf_scaled(u - a, scale) - fejer_cdf_scaled(u - b, scale);
  }
  return out;
}

double smoothed_lower_tail(const IntervalUnion& psi, double eps, double u) {
  const IntervalUnion minus = psi.shrunk(eps);
  const double scale = eps * eps;
  double out = 0.0;
  for (const auto& [a, b] : minus.parts()) {
    // w ranges over [u - b, u - a] intersected with |w| >= eps
    const double lo = u - b;
    const double hi = u - a;
    const double left_hi = std::min(hi, -eps);
    if (lo < left_hi) out += fejer_cdf_scaled(left_hi, scale) - fejer_cdf_scaled(lo, scale);
    const double right_lo = std::max(lo, eps);
    if (right_lo < hi) out += fejer_cdf_scaled(hi, scale) - fejer_cdf_scaled(right_lo, scale);
  }
  return out;
}

double smoothing_constant(double eps) {
  const double inside = 2.0 * fejer_cdf(1.0 / eps) - 1.0;
  return 1.0 / inside - 1.0;
}

SandwichReport smoothing_sandwich_check(const IntervalUnion& psi, double eps,
                                        std::span<const double> u_grid) {
  SandwichReport report;
  report.c_rho = smoothing_constant(eps);
  report.grid_points = u_grid.size();
  const double one_plus_c = 1.0 + report.c_rho;
  for (double u : u_grid) {
    const double value = psi.indicator(u);
    const double upper = one_plus_c * smoothed_upper(psi, eps, u);
    const double lower = smoothed_lower(psi, eps, u) - smoothed_lower_tail(psi, eps, u);
    report.upper_violation = std::max(report.upper_violation, value - upper);
    report.lower_violation = std::max(report.lower_violation, lower - value);
  }
  report.holds = report.upper_violation <= 1e-10 && report.lower_violation <= 1e-10;
  return report;
}

double triangular_density(double u, double eps1) {
  const double au = std::abs(u);
  if (au >= eps1) return 0.0;
  return (1.0 - au / eps1) / eps1;
}

namespace {

// CDF of the triangular kernel on [-eps1, eps1].
double triangular_cdf(double w, double eps1) {
  if (w <= -eps1) return 0.0;
  if (w >= eps1) return 1.0;
  if (w <= 0.0) {
    const double t = w + eps1;
    return t * t / (2.0 * eps1 * eps1);
  }
  const double t = eps1 - w;
  return 1.0 - t * t / (2.0 * eps1 * eps1);
}

}  // namespace

double band_mollifier_upper(double u, double lo, double hi, double eps1) {
  return triangular_cdf(u - (lo - eps1), eps1) - triangular_cdf(u - (hi + eps1), eps1);
}

double band_mollifier_lower(double u, double lo, double hi, double eps1) {
  if (hi - lo < 2.0 * eps1) return 0.0;
  return triangular_cdf(u - (lo + eps1), eps1) - triangular_cdf(u - (hi - eps1), eps1);
}

}  // namespace projwalk
