#include "projwalk/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "projwalk/errors.hpp"

namespace projwalk {

namespace {

constexpr double kPi = std::numbers::pi;

void scatter(Eigen::MatrixXd& a, int row, const ProjGrid::Interp& w, double amount) {
  a(row, w.j0) += amount * w.w0;
  if (w.j1 >= 0) a(row, w.j1) += amount * w.w1;
}

void scatter(Eigen::MatrixXcd& a, int row, const ProjGrid::Interp& w,
             std::complex<double> amount) {
  a(row, w.j0) += amount * w.w0;
  if (w.j1 >= 0) a(row, w.j1) += amount * w.w1;
}

}  // namespace

TransferAssembler::TransferAssembler(const MatrixEnsemble& ensemble,
                                     std::shared_ptr<const ProjGrid> grid, bool dual)
    : grid_(std::move(grid)), dual_(dual), probs_(ensemble.probs()) {
  const int m = grid_->size();
  const auto n_support = ensemble.size();
  links_.reserve(static_cast<std::size_t>(m) * n_support);
  for (int i = 0; i < m; ++i) {
    const Vec& x = grid_->point(i).rep();
    for (std::size_t gi = 0; gi < n_support; ++gi) {
      const Eigen::MatrixXd& g = ensemble.matrix(gi).mat();
      const Vec image = dual_ ? Vec(g.transpose() * x) : Vec(g * x);
      Link link;
      link.sigma = std::log(image.norm());
      link.w = grid_->locate(image);
      links_.push_back(link);
    }
  }
}

Eigen::MatrixXd TransferAssembler::assemble(double s) const {
  const int m = grid_->size();
  const auto n_support = probs_.size();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (std::size_t gi = 0; gi < n_support; ++gi) {
      const Link& link = links_[static_cast<std::size_t>(i) * n_support + gi];
      const double amount = s == 0.0 ? probs_[gi] : probs_[gi] * std::exp(s * link.sigma);
      scatter(a, i, link.w, amount);
    }
  }
  return a;
}

Eigen::MatrixXcd TransferAssembler::assemble_perturbed(double t, double lambda) const {
  const int m = grid_->size();
  const auto n_support = probs_.size();
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    for (std::size_t gi = 0; gi < n_support; ++gi) {
      const Link& link = links_[static_cast<std::size_t>(i) * n_support + gi];
      const double phase = t * (link.sigma - lambda);
      const std::complex<double> amount =
          probs_[gi] * std::complex<double>(std::cos(phase), std::sin(phase));
      scatter(a, i, link.w, amount);
    }
  }
  return a;
}

OperatorMatrix build_operator(const MatrixEnsemble& ensemble,
                              std::shared_ptr<const ProjGrid> grid, double s, bool dual,
                              std::pair<double, double> s_range) {
  if (s < s_range.first || s > s_range.second) {
    std::ostringstream msg;
    msg << "build_operator: s = " << s << " outside configured range [" << s_range.first << ", "
        << s_range.second << "]";
    throw ConfigError(msg.str());
  }
  TransferAssembler assembler(ensemble, grid, dual);
  OperatorMatrix op;
  op.s = s;
  op.dual = dual;
  op.grid = std::move(grid);
  op.a = assembler.assemble(s);
  return op;
}

namespace {

// Growth rate of the deflated operator x -> Ax - kappa r (nu.x)/(nu.r),
// estimated from the geometric mean of late-iteration norm ratios.
double deflated_growth(const Eigen::MatrixXd& a, double kappa, const Eigen::VectorXd& r,
                       const Eigen::VectorXd& nu) {
  const auto m = a.rows();
  const double nu_r = nu.dot(r);
  Eigen::VectorXd v(m);
  for (Eigen::Index i = 0; i < m; ++i) v[i] = (i % 2 == 0) ? 1.0 : -1.0;
  v -= r * (nu.dot(v) / nu_r);
  double nv = v.norm();
  if (nv == 0.0) return 0.0;
  v /= nv;
  const int warmup = 120;
  const int window = 60;
  double log_growth = 0.0;
  for (int k = 0; k < warmup + window; ++k) {
    Eigen::VectorXd w = a * v;
    w -= r * (nu.dot(w) / nu_r);
    nv = w.norm();
    if (nv < 1e-290) return 0.0;  // deflated component annihilated
    if (k >= warmup) log_growth += std::log(nv);
    v = w / nv;
  }
  return std::exp(log_growth / window) / kappa;
}

}  // namespace

EigenPair dominant_eigen(const OperatorMatrix& op) {
  const auto m = op.a.rows();
  EigenPair out;
  const int max_iterations = 100000;
  const double rayleigh_tol = 1e-12;

  Eigen::VectorXd v = Eigen::VectorXd::Ones(m);
  double kappa = 0.0;
  bool converged = false;
  int iter = 0;
  for (; iter < max_iterations; ++iter) {
    Eigen::VectorXd w = op.a * v;
    const double new_kappa = v.dot(w) / v.dot(v);
    const double resid = (w - new_kappa * v).lpNorm<Eigen::Infinity>();
    const double scale = std::max(1.0, std::abs(new_kappa)) * std::max(1.0, v.lpNorm<Eigen::Infinity>());
    const bool rayleigh_ok = std::abs(new_kappa - kappa) <= rayleigh_tol * std::max(1.0, std::abs(new_kappa));
    kappa = new_kappa;
    v = w / w.lpNorm<Eigen::Infinity>();
    if (rayleigh_ok && resid <= 1e-12 * scale) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw NoGapError("dominant_eigen: power iteration stalled (subdominant ratio > 0.999)");
  }

  Eigen::VectorXd nu = Eigen::VectorXd::Constant(m, 1.0 / static_cast<double>(m));
  converged = false;
  for (int k = 0; k < max_iterations; ++k) {
    Eigen::VectorXd w = op.a.transpose() * nu;
    const double mass = w.sum();
    w /= mass;
    const double diff = (w - nu).lpNorm<Eigen::Infinity>();
    nu = w;
    if (diff <= 1e-14) {
      converged = true;
      break;
    }
    iter++;
  }
  if (!converged) {
    throw NoGapError("dominant_eigen: adjoint iteration stalled (subdominant ratio > 0.999)");
  }

  out.kappa = kappa;
  out.r = v;
  out.nu = nu;
  out.iterations = iter;
  out.residual_r = (op.a * v - kappa * v).lpNorm<Eigen::Infinity>();
  out.residual_nu = (op.a.transpose() * nu - kappa * nu).lpNorm<1>();
  out.gap = deflated_growth(op.a, kappa, v, nu);
  return out;
}

double SpectralResult::stationary_expectation(const GridFunction& phi) const {
  return nu.dot(phi.cwiseProduct(r));
}

SpectralResult solve_spectral(const MatrixEnsemble& ensemble, std::shared_ptr<const ProjGrid> grid,
                              std::shared_ptr<const ProjGrid> dual_grid, double s,
                              std::pair<double, double> s_range) {
  SpectralResult spec;
  spec.s = s;
  spec.grid = grid;
  spec.dual_grid = dual_grid;

  const OperatorMatrix primal = build_operator(ensemble, grid, s, /*dual=*/false, s_range);
  EigenPair p = dominant_eigen(primal);
  spec.kappa = p.kappa;
  spec.gap = p.gap;
  spec.nu = p.nu;
  spec.r = p.r / p.nu.dot(p.r);  // nu_s(r_s) = 1

  const OperatorMatrix dual = build_operator(ensemble, dual_grid, s, /*dual=*/true, s_range);
  EigenPair q = dominant_eigen(dual);
  spec.dual_kappa = q.kappa;
  spec.dual_gap = q.gap;
  spec.dual_nu = q.nu;
  spec.dual_r = q.r / q.nu.dot(q.r);
  return spec;
}

namespace {

// int_0^a (sin t)^s dt for small a >= 0, by the expansion of (sin t / t)^s.
double sin_pow_primitive(double a, double s) {
  if (a <= 0.0) return 0.0;
  const double c2 = -s / 6.0;
  const double c4 = s / 120.0 + s * (s - 1.0) / 72.0;
  const double a2 = a * a;
  return std::pow(a, s + 1.0) *
         (1.0 / (s + 1.0) + c2 * a2 / (s + 3.0) + c4 * a2 * a2 / (s + 5.0));
}

// Mean of |cos u|^s over [lo, hi], hi - lo << 1. The interval sits inside
// (-pi/2, 3pi/2), so the only possible zero of the cosine is at pi/2; cells
// near it integrate the singularity in closed form (valid for s > -1), the
// rest use 4-point Gauss-Legendre.
double mean_abs_cos_pow(double lo, double hi, double s) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  const double w = hi - lo;
  if (std::abs(lo - kHalfPi) < 0.1 || std::abs(hi - kHalfPi) < 0.1) {
    // integral splits as F(pi/2 - lo) pieces around the zero; F is odd-ish
    // through the sign of its argument
    const double a = kHalfPi - lo;  // may be negative
    const double b = hi - kHalfPi;
    double total = 0.0;
    if (a >= 0.0 && b >= 0.0) {
      total = sin_pow_primitive(a, s) + sin_pow_primitive(b, s);
    } else if (a > 0.0) {  // hi < pi/2: [lo, hi] left of the zero
      total = sin_pow_primitive(a, s) - sin_pow_primitive(-b, s);
    } else {  // lo > pi/2
      total = sin_pow_primitive(b, s) - sin_pow_primitive(-a, s);
    }
    return total / w;
  }
  static constexpr double kNode[2] = {0.3399810435848563, 0.8611363115940526};
  static constexpr double kWeight[2] = {0.6521451548625461, 0.3478548451374538};
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * w;
  double acc = 0.0;
  for (int k = 0; k < 2; ++k) {
    acc += kWeight[k] * (std::pow(std::abs(std::cos(mid + half * kNode[k])), s) +
                         std::pow(std::abs(std::cos(mid - half * kNode[k])), s));
  }
  return 0.5 * acc;
}

}  // namespace

ConsistencyReport eigenfunction_consistency(const SpectralResult& spec) {
  const int m = spec.grid->size();
  const int md = spec.dual_grid->size();
  const bool circle = spec.grid->is_circle() && spec.dual_grid->is_circle();
  ConsistencyReport report;
  Eigen::VectorXd formula(m);
  const double dual_h = spec.dual_grid->spacing();
  for (int i = 0; i < m; ++i) {
    const ProjPoint& x = spec.grid->point(i);
    const double theta = circle ? ProjGrid::angle_of(x.rep()) : 0.0;
    double acc = 0.0;
    double small = 0.0;
    for (int j = 0; j < md; ++j) {
      const double d = delta(DualProjPoint::from_point(spec.dual_grid->point(j)), x);
      if (d < 1e-8) small += spec.dual_nu[j];
      if (circle) {
        // each dual node represents a cell; integrate the bracket kernel over
        // it so nodes sitting close to the hyperplane of x stay harmless
        double mid = ProjGrid::angle_of(spec.dual_grid->point(j).rep()) - theta;
        if (mid < 0.0) mid += std::numbers::pi;
        acc += spec.dual_nu[j] *
               (spec.s == 0.0
                    ? 1.0
                    : mean_abs_cos_pow(mid - 0.5 * dual_h, mid + 0.5 * dual_h, spec.s));
      } else {
        acc += spec.s == 0.0 ? spec.dual_nu[j]
                             : spec.dual_nu[j] * std::pow(std::max(d, kVanishingBracket), spec.s);
      }
    }
    formula[i] = acc;
    report.small_bracket_mass = std::max(report.small_bracket_mass, small);
  }
  if (spec.s < 0.0 && report.small_bracket_mass > 0.01) {
    throw SingularBracketError(
        "eigenfunction_consistency: > 1% of dual mass at vanishing bracket with s < 0");
  }
  // sup-optimal scalar: |r - c T|_inf is convex piecewise linear in c
  const auto sup_at = [&](double c) {
    return (spec.r - c * formula).lpNorm<Eigen::Infinity>();
  };
  double lo = 0.0;
  double hi = 2.0 * spec.r.dot(formula) / formula.squaredNorm();
  for (int iter = 0; iter < 200; ++iter) {
    const double c1 = lo + (hi - lo) / 3.0;
    const double c2 = hi - (hi - lo) / 3.0;
    if (sup_at(c1) < sup_at(c2)) {
      hi = c2;
    } else {
      lo = c1;
    }
  }
  report.scale = 0.5 * (lo + hi);
  report.residual = sup_at(report.scale) / spec.r.lpNorm<Eigen::Infinity>();
  return report;
}

GridFunction markov_q_apply(const SpectralResult& spec, const OperatorMatrix& op, GridFunction phi,
                            int n) {
  for (int k = 0; k < n; ++k) {
    phi = (op.a * phi.cwiseProduct(spec.r).matrix()).cwiseQuotient(spec.kappa * spec.r);
  }
  return phi;
}

double tilt_density(const SpectralResult& spec, const Matrix& g, const DualProjPoint& y) {
  const Vec image = g.mat().transpose() * y.rep();
  const double sigma_star = std::log(image.norm());
  const double r_image = spec.dual_grid->interpolate(spec.dual_r, image);
  const double r_y = spec.dual_grid->interpolate(spec.dual_r, y.rep());
  return std::exp(spec.s * sigma_star) / spec.dual_kappa * r_image / r_y;
}

double tilt_normalization_deviation(const SpectralResult& spec, const MatrixEnsemble& ensemble) {
  double worst = 0.0;
  for (int j = 0; j < spec.dual_grid->size(); ++j) {
    const DualProjPoint y = DualProjPoint::from_point(spec.dual_grid->point(j));
    double total = 0.0;
    for (std::size_t gi = 0; gi < ensemble.size(); ++gi) {
      total += ensemble.prob(gi) * tilt_density(spec, ensemble.matrix(gi), y);
    }
    worst = std::max(worst, std::abs(total - 1.0));
  }
  return worst;
}

TiltedPath tilted_sample(const MatrixEnsemble& ensemble, const SpectralResult& spec,
                         const ProjPoint& x0, std::int64_t n, RngStream& rng, TiltMode mode) {
  TiltedPath path;
  path.states.reserve(static_cast<std::size_t>(n));
  Vec v = x0.rep();
  double log_scale = 0.0;
  const double log_r0 = std::log(spec.grid->interpolate(spec.r, v));
  std::vector<double> kernel(ensemble.size());
  for (std::int64_t step = 0; step < n; ++step) {
    std::size_t pick = 0;
    if (mode == TiltMode::kWeighted) {
      pick = ensemble.sample_index(rng);
    } else {
      // g-conditional tilted kernel mu(g) e^{s sigma(g, x)} r(gx) / (kappa r(x)),
      // renormalized against the grid eigen-residual
      double total = 0.0;
      for (std::size_t gi = 0; gi < ensemble.size(); ++gi) {
        const Vec image = ensemble.matrix(gi).mat() * v;
        const double norm = image.norm();
        kernel[gi] = ensemble.prob(gi) * std::exp(spec.s * std::log(norm)) *
                     spec.grid->interpolate(spec.r, image) /
                     (spec.kappa * spec.grid->interpolate(spec.r, v));
        total += kernel[gi];
      }
      const double u = rng.next_double() * total;
      double acc = 0.0;
      pick = ensemble.size() - 1;
      for (std::size_t gi = 0; gi < ensemble.size(); ++gi) {
        acc += kernel[gi];
        if (u < acc) {
          pick = gi;
          break;
        }
      }
    }
    v = ensemble.matrix(pick).mat() * v;
    const double norm = v.norm();
    v /= norm;
    log_scale += std::log(norm);
    path.states.push_back(project(v));
  }
  path.log_norm = log_scale;
  const double log_rn = std::log(spec.grid->interpolate(spec.r, v));
  path.weight = std::exp(spec.s * log_scale - static_cast<double>(n) * std::log(spec.kappa) +
                         log_rn - log_r0);
  return path;
}

HarmonicityReport harmonicity_residual(const SpectralResult& spec, const MatrixEnsemble& ensemble,
                                       int y_index, const GridFunction& phi) {
  const ProjGrid& grid = *spec.grid;
  const ProjGrid& dual = *spec.dual_grid;
  const DualProjPoint y = DualProjPoint::from_point(dual.point(y_index));
  const double r_star_y = spec.dual_r[y_index];
  HarmonicityReport report;

  const auto bracket_pow = [&](double d) {
    return spec.s == 0.0 ? 1.0 : std::pow(std::max(d, kVanishingBracket), spec.s);
  };

  double small_mass = 0.0;
  double lhs = 0.0;
  for (int i = 0; i < grid.size(); ++i) {
    const double d = delta(y, grid.point(i));
    if (d < 1e-8) small_mass += spec.nu[i];
    lhs += phi[i] * bracket_pow(d) * spec.nu[i];
  }
  lhs /= r_star_y;

  double rhs = 0.0;
  for (std::size_t gi = 0; gi < ensemble.size(); ++gi) {
    const Matrix& g = ensemble.matrix(gi);
    const Vec transported = g.mat().transpose() * y.rep();
    const int snap = dual.nearest(transported);
    const DualProjPoint y_snap = DualProjPoint::from_point(dual.point(snap));
    report.snap_distance =
        std::max(report.snap_distance, dist(project_dual(transported), y_snap));
    const double sigma_star = std::log(transported.norm());
    double inner = 0.0;
    double small_here = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
      const double d = delta(y_snap, grid.point(i));
      if (d < 1e-8) small_here += spec.nu[i];
      inner += grid.interpolate(phi, g.mat() * grid.point(i).rep()) * bracket_pow(d) * spec.nu[i];
    }
    small_mass = std::max(small_mass, small_here);
    // r^*(y_snap) cancels between the tilt density and g upsilon^{y_snap}
    rhs += ensemble.prob(gi) * std::exp(spec.s * sigma_star) /
           (spec.dual_kappa * r_star_y) * inner;
  }
  if (spec.s < 0.0 && small_mass > 0.01) {
    throw SingularBracketError(
        "harmonicity_residual: > 1% of mass at vanishing bracket with s < 0");
  }
  report.lhs = lhs;
  report.rhs = rhs;
  report.residual = std::abs(lhs - rhs);
  return report;
}

Eigen::VectorXcd perturbed_power(const TransferAssembler& assembler, double t, double lambda,
                                 int n, const Eigen::VectorXcd& phi) {
  const Eigen::MatrixXcd a = assembler.assemble_perturbed(t, lambda);
  Eigen::VectorXcd v = phi;
  for (int k = 0; k < n; ++k) v = a * v;
  return v;
}

FourierCheck llt_fourier_check(const TransferAssembler& assembler, const GridFunction& phi,
                               const std::function<double(double)>& psi, double support_t, int n,
                               double l, double lambda, double sigma, int x_index,
                               const GridMeasure& nu0, int max_nodes) {
  if (!(sigma > 0.0)) throw DegenerateSigmaError("llt_fourier_check: sigma must be > 0");
  if (!(support_t > 0.0)) throw ConfigError("llt_fourier_check: psi support must be positive");
  if (std::abs(l) > 1.0 / std::sqrt(static_cast<double>(n))) {
    throw ConfigError("llt_fourier_check: |l| must be <= 1/sqrt(n)");
  }

  const double phase_scale = std::max(static_cast<double>(n) * std::abs(l),
                                      static_cast<double>(n) * sigma);
  const double step_bound = kPi / (8.0 * std::max(phase_scale, 1.0));
  auto intervals = static_cast<long>(std::ceil(2.0 * support_t / step_bound));
  if (intervals % 2 == 1) ++intervals;
  if (intervals + 1 > max_nodes) {
    throw UnresolvedPhaseError("llt_fourier_check: phase resolution exceeds the node budget");
  }
  const double h = 2.0 * support_t / static_cast<double>(intervals);

  const Eigen::VectorXcd phic = phi.cast<std::complex<double>>();
  std::complex<double> integral(0.0, 0.0);
  for (long k = 0; k <= intervals; ++k) {
    const double t = -support_t + h * static_cast<double>(k);
    const double weight = (k == 0 || k == intervals) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    const double psi_t = psi(t);
    if (psi_t == 0.0) continue;
    const Eigen::VectorXcd iterate = perturbed_power(assembler, t, lambda, n, phic);
    const double phase = -t * l * static_cast<double>(n);
    integral += weight * psi_t * std::complex<double>(std::cos(phase), std::sin(phase)) *
                iterate[x_index];
  }
  integral *= h / 3.0;

  const double prefactor = sigma * std::sqrt(static_cast<double>(n)) *
                           std::exp(static_cast<double>(n) * l * l / (2.0 * sigma * sigma));
  const std::complex<double> value = prefactor * integral;

  FourierCheck out;
  out.value_re = value.real();
  out.value_im = value.imag();
  out.target = std::sqrt(2.0 * kPi) * nu0.dot(phi) * psi(0.0);
  out.error = std::abs(value - std::complex<double>(out.target, 0.0));
  out.quadrature_nodes = static_cast<int>(intervals + 1);
  out.step = h;
  return out;
}

}  // namespace projwalk
