#include "projwalk/zeroone.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "projwalk/errors.hpp"
#include "projwalk/grid.hpp"
#include "projwalk/stats.hpp"

namespace projwalk {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kZero:
      return "zero";
    case Verdict::kOne:
      return "one";
    default:
      return "inconclusive";
  }
}

std::vector<double> LevelSetQuery::default_h_sequence() {
  std::vector<double> h;
  double value = 0.1;
  for (int i = 0; i < 8; ++i) {
    h.push_back(value);
    value /= 2.0;
  }
  return h;
}

void LevelSetQuery::validate() const {
  if (h_seq.empty()) throw ConfigError("level set query: empty h sequence");
  for (std::size_t i = 0; i < h_seq.size(); ++i) {
    if (!(h_seq[i] > 0.0)) throw ConfigError("level set query: nonpositive halfwidth");
    if (i > 0 && !(h_seq[i] < h_seq[i - 1])) {
      throw ConfigError("level set query: h sequence must be strictly decreasing");
    }
  }
}

namespace {

constexpr std::size_t kVerdictMinPoints = 10000;

// Least-squares fit of mass(h) = atom + b h^alpha in log-residual form:
// for a trial atom the residual log(mass - atom) is linear in log h. The
// atom is scanned over [0, min mass].
void fit_atom(const std::vector<double>& h, const std::vector<double>& mass, double* atom,
              double* alpha, double* fit_rms) {
  *atom = 0.0;
  *alpha = 0.0;
  *fit_rms = 0.0;
  const double m_min = *std::min_element(mass.begin(), mass.end());
  const double m_max = *std::max_element(mass.begin(), mass.end());
  if (m_max <= 0.0) return;            // no mass anywhere: atom 0
  if (m_max - m_min < 1e-12) {         // flat curve: pure atom, no decay term
    *atom = m_min;
    return;
  }
  std::vector<double> log_h(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) log_h[i] = std::log(h[i]);

  double best_sse = std::numeric_limits<double>::infinity();
  const int steps = 400;
  for (int k = 0; k < steps; ++k) {
    const double a = m_min * static_cast<double>(k) / steps;
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < mass.size(); ++i) {
      const double excess = mass[i] - a;
      if (excess > 1e-15) {
        xs.push_back(log_h[i]);
        ys.push_back(std::log(excess));
      }
    }
    if (xs.size() < 3) continue;
    const LinearFit fit = linear_fit(xs, ys);
    double sse = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - fit.intercept - fit.slope * xs[i];
      sse += r * r;
    }
    sse /= static_cast<double>(xs.size());
    if (sse < best_sse) {
      best_sse = sse;
      *atom = a;
      *alpha = fit.slope;
      *fit_rms = std::sqrt(sse);
    }
  }
  if (!std::isfinite(best_sse)) {  // decay fit impossible; report the floor
    *atom = m_min;
  }
}

MassCurve curve_from_values(const std::vector<double>& values, const std::vector<double>& weights,
                            double effective_n, const std::vector<double>& h_seq,
                            bool enough_points) {
  MassCurve curve;
  curve.h = h_seq;
  curve.points = values.size();
  for (double h : h_seq) {
    double mass = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] <= h) mass += weights[i];
    }
    curve.mass.push_back(mass);
    const double band = effective_n > 0.0
                            ? 1.959963984540054 *
                                  std::sqrt(std::max(mass * (1.0 - mass), 0.0) / effective_n)
                            : 0.0;
    curve.ci_half.push_back(band);
  }
  double fit_rms = 0.0;
  fit_atom(curve.h, curve.mass, &curve.atom, &curve.alpha_hat, &fit_rms);
  curve.atom_ci = curve.ci_half.back() + fit_rms;
  if (!enough_points) {
    curve.verdict = Verdict::kInconclusive;
  } else if (curve.atom >= 0.99) {
    curve.verdict = Verdict::kOne;
  } else if (curve.atom <= 0.01 &&
             (curve.alpha_hat > 0.0 || curve.mass.front() <= 0.0)) {
    curve.verdict = Verdict::kZero;
  } else {
    curve.verdict = Verdict::kInconclusive;
  }
  return curve;
}

}  // namespace

MassCurve level_set_mass(const EmpiricalMeasure& measure, const LevelSetQuery& query) {
  query.validate();
  std::vector<double> distance(measure.size());
  for (std::size_t i = 0; i < measure.size(); ++i) {
    distance[i] = std::abs(log_delta_clamped(delta(query.y, measure.points[i])) - query.t_log);
  }
  return curve_from_values(distance, measure.weights, measure.effective_samples(), query.h_seq,
                           measure.size() >= kVerdictMinPoints);
}

HyperplaneReport hyperplane_mass(const EmpiricalMeasure& measure, const DualProjPoint& y,
                                 const std::vector<double>& t_seq) {
  if (t_seq.empty()) throw ConfigError("hyperplane_mass: empty t sequence");
  HyperplaneReport report;
  report.t = t_seq;
  std::vector<double> deltas(measure.size());
  for (std::size_t i = 0; i < measure.size(); ++i) deltas[i] = delta(y, measure.points[i]);
  for (double t : t_seq) {
    double mass = 0.0;
    for (std::size_t i = 0; i < measure.size(); ++i) {
      if (deltas[i] <= t) mass += measure.weights[i];
    }
    report.mass.push_back(mass);
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < t_seq.size(); ++i) {
    if (report.mass[i] > 0.0) {
      xs.push_back(std::log(t_seq[i]));
      ys.push_back(std::log(report.mass[i]));
    }
  }
  if (xs.size() >= 3) {
    const LinearFit fit = linear_fit(xs, ys);
    report.alpha_hat = fit.slope;
    report.c_hat = std::exp(fit.intercept);
  }
  const double smallest_mass = report.mass.back();
  if (smallest_mass >= 0.99) {
    report.verdict = Verdict::kOne;
    report.a1_violation_flag = true;
  } else if (smallest_mass <= 0.01 && (report.alpha_hat > 0.0 || smallest_mass <= 0.0)) {
    report.verdict = Verdict::kZero;
  } else {
    report.verdict = Verdict::kInconclusive;
    report.a1_violation_flag = smallest_mass >= 0.5;
  }
  return report;
}

PolynomialSet::PolynomialSet(int d, std::vector<std::pair<std::vector<int>, double>> monomials)
    : d_(d), degree_(0), monomials_(std::move(monomials)) {
  if (d_ < 2) throw ConfigError("polynomial: need d >= 2");
  if (monomials_.empty()) throw ConfigError("polynomial: empty monomial list");
  bool nonzero = false;
  bool first = true;
  for (const auto& [exps, coeff] : monomials_) {
    if (static_cast<int>(exps.size()) != d_) {
      throw ConfigError("polynomial: exponent vector size differs from d");
    }
    int total = 0;
    for (int e : exps) {
      if (e < 0) throw ConfigError("polynomial: negative exponent");
      total += e;
    }
    if (first) {
      degree_ = total;
      first = false;
    } else if (total != degree_) {
      throw ConfigError("polynomial: not homogeneous (mixed total degrees)");
    }
    if (coeff != 0.0) nonzero = true;
  }
  if (!nonzero) throw ConfigError("polynomial: identically zero");
}

PolynomialSet PolynomialSet::coordinate_hyperplane(int d, int coordinate) {
  std::vector<int> exps(static_cast<std::size_t>(d), 0);
  exps[static_cast<std::size_t>(coordinate)] = 1;
  return PolynomialSet(d, {{exps, 1.0}});
}

PolynomialSet PolynomialSet::quadratic_form(int p, int d) {
  std::vector<std::pair<std::vector<int>, double>> monomials;
  for (int i = 0; i < d; ++i) {
    std::vector<int> exps(static_cast<std::size_t>(d), 0);
    exps[static_cast<std::size_t>(i)] = 2;
    monomials.emplace_back(std::move(exps), i < p ? 1.0 : -1.0);
  }
  return PolynomialSet(d, std::move(monomials));
}

double PolynomialSet::eval(const Vec& v) const {
  double total = 0.0;
  for (const auto& [exps, coeff] : monomials_) {
    double term = coeff;
    for (int i = 0; i < d_; ++i) {
      for (int e = 0; e < exps[static_cast<std::size_t>(i)]; ++e) term *= v[i];
    }
    total += term;
  }
  return total;
}

MassCurve algebraic_mass(const EmpiricalMeasure& measure, const PolynomialSet& pset,
                         const std::vector<double>& h_seq) {
  if (measure.dim() != pset.dim()) throw ConfigError("algebraic_mass: dimension mismatch");
  LevelSetQuery checker;
  checker.h_seq = h_seq;
  checker.validate();
  std::vector<double> values(measure.size());
  for (std::size_t i = 0; i < measure.size(); ++i) {
    values[i] = std::abs(pset.eval(measure.points[i].rep()));  // |v| = 1
  }
  return curve_from_values(values, measure.weights, measure.effective_samples(), h_seq,
                           measure.size() >= kVerdictMinPoints);
}

double choose_offset(const std::vector<std::pair<double, double>>& atom_estimates,
                     const std::vector<double>& candidates, double gap, int k_max) {
  if (candidates.empty()) throw ConfigError("choose_offset: empty candidate list");
  std::vector<double> atoms;
  for (const auto& [t0, mass] : atom_estimates) {
    if (mass >= 0.5) atoms.push_back(t0);
  }
  if (atoms.empty()) return candidates.front();
  for (double eta : candidates) {
    bool clear = true;
    for (double t0 : atoms) {
      for (int k = 1; k <= k_max && clear; ++k) {
        if (std::abs(-eta * k - t0) <= gap) clear = false;
      }
      if (!clear) break;
    }
    if (clear) return eta;
  }
  throw NoValidOffsetError("choose_offset: every candidate hits a detected atom");
}

namespace {

// Directed Hausdorff over angle-sorted clouds on the projective line; the
// sine metric is monotone in the wrapped angle difference, so the sweep can
// work in angles and convert once at the end.
double directed_hausdorff_circle(const std::vector<double>& from, const std::vector<double>& to) {
  constexpr double kPi = std::numbers::pi;
  const auto wrapped = [](double a, double t) {
    const double raw = std::abs(a - t);
    return std::min(raw, kPi - raw);
  };
  double worst = 0.0;
  for (double a : from) {
    const auto it = std::lower_bound(to.begin(), to.end(), a);
    double best = wrapped(a, to.front());
    best = std::min(best, wrapped(a, to.back()));
    if (it != to.end()) best = std::min(best, wrapped(a, *it));
    if (it != to.begin()) best = std::min(best, wrapped(a, *(it - 1)));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace

double support_compare(const EmpiricalMeasure& m1, const EmpiricalMeasure& m2) {
  if (m1.points.empty() || m2.points.empty()) throw ConfigError("support_compare: empty measure");
  if (m1.dim() != m2.dim()) throw ConfigError("support_compare: dimension mismatch");
  if (m1.dim() == 2) {
    auto angles = [](const EmpiricalMeasure& m) {
      std::vector<double> out(m.size());
      for (std::size_t i = 0; i < m.size(); ++i) out[i] = ProjGrid::angle_of(m.points[i].rep());
      std::sort(out.begin(), out.end());
      return out;
    };
    const std::vector<double> a = angles(m1);
    const std::vector<double> b = angles(m2);
    const double worst =
        std::max(directed_hausdorff_circle(a, b), directed_hausdorff_circle(b, a));
    return std::sin(std::min(worst, std::numbers::pi / 2.0));
  }
  // Deterministic stride subsample for larger d.
  constexpr std::size_t kCap = 4096;
  auto subsample = [](const EmpiricalMeasure& m) {
    std::vector<const ProjPoint*> out;
    const std::size_t stride = m.size() > kCap ? m.size() / kCap : 1;
    for (std::size_t i = 0; i < m.size(); i += stride) out.push_back(&m.points[i]);
    return out;
  };
  const auto a = subsample(m1);
  const auto b = subsample(m2);
  auto directed = [](const std::vector<const ProjPoint*>& from,
                     const std::vector<const ProjPoint*>& to) {
    double worst = 0.0;
    for (const ProjPoint* x : from) {
      double best = 1.0;
      for (const ProjPoint* y : to) best = std::min(best, dist(*x, *y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace projwalk
