#pragma once

#include <span>
#include <utility>
#include <vector>

namespace projwalk {

// Finite union of closed intervals; the indicator functions fed to the
// smoothing machinery. Parts are kept sorted and disjoint.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  static IntervalUnion interval(double a, double b);
  static IntervalUnion from_parts(std::vector<std::pair<double, double>> parts);

  const std::vector<std::pair<double, double>>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  double indicator(double u) const;

  // Supports of psi^+_eps and psi^-_eps: sup / inf of the indicator over the
  // closed eps-ball. Expanding merges touching parts; shrinking drops parts
  // narrower than 2 eps.
  IntervalUnion expanded(double eps) const;
  IntervalUnion shrunk(double eps) const;

 private:
  std::vector<std::pair<double, double>> parts_;
};

// Sine integral Si(x) = integral_0^x sin(u)/u du. Power series for small x,
// continued fraction for the complex exponential integral beyond.
double sine_integral(double x);

// Fejer kernel rho(u) = (1 - cos u) / (pi u^2); integrates to 1 and its
// Fourier transform is the triangle (1 - |t|)_+ on [-1, 1].
double fejer_density(double u);
// CDF of the Fejer kernel.
double fejer_cdf(double z);

// CDF of the rescaled kernel rho_scale(u) = rho(u / scale) / scale.
double fejer_cdf_scaled(double z, double scale);

// (psi^+_eps * rho_{eps^2})(u) for an interval-union indicator psi; exact via
// CDF differences.
double smoothed_upper(const IntervalUnion& psi, double eps, double u);
// (psi^-_eps * rho_{eps^2})(u).
double smoothed_lower(const IntervalUnion& psi, double eps, double u);
// integral over |w| >= eps of psi^-_eps(u - w) rho_{eps^2}(w) dw.
double smoothed_lower_tail(const IntervalUnion& psi, double eps, double u);

// 1 + C_rho(eps) = 1 / integral_{|w| <= eps} rho_{eps^2}(w) dw; vanishes as
// eps -> 0.
double smoothing_constant(double eps);

struct SandwichReport {
  bool holds = true;
  double c_rho = 0.0;
  // worst signed violations of the two inequalities over the grid (positive
  // means violated by that amount)
  double upper_violation = 0.0;
  double lower_violation = 0.0;
  std::size_t grid_points = 0;
};

// Pointwise check of
//   psi^-_eps * rho_{eps^2}(u) - integral_{|w|>=eps} psi^-_eps(u-w) rho_{eps^2}(w) dw
//     <= psi(u) <= (1 + C_rho(eps)) psi^+_eps * rho_{eps^2}(u)
// over the supplied u grid.
SandwichReport smoothing_sandwich_check(const IntervalUnion& psi, double eps,
                                        std::span<const double> u_grid);

// Triangular kernel (1/eps1)(1 - |u|/eps1) on [-eps1, eps1]; the level-band
// mollifier used by the discretized bracket functions.
double triangular_density(double u, double eps1);

// (chi_{k,eps1}^+ * bar rho_{eps1})(u) where chi is the indicator of
// (lo, hi]; closed form, Hoelder continuous in u, equals 1 on (lo, hi] and 0
// outside (lo - 2 eps1, hi + 2 eps1].
double band_mollifier_upper(double u, double lo, double hi, double eps1);
// (chi_{k,eps1}^- * bar rho_{eps1})(u); supported inside (lo + .., hi - ..).
double band_mollifier_lower(double u, double lo, double hi, double eps1);

}  // namespace projwalk
