#include "projwalk/projective.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <cmath>
#include <sstream>

#include "projwalk/errors.hpp"

namespace projwalk {

namespace {

// Unit norm, then flip sign so the first coordinate of magnitude > 1e-9 is
// positive. Unit vectors always have a coordinate of magnitude >= 1/sqrt(d),
// so the scan cannot fall through for d <= 1e18.
Vec canonicalize(const Vec& v) {
  const double n = v.norm();
  if (!(n > kVanishingBracket)) {
    throw ZeroVectorError("project: vector norm below 1e-300");
  }
  // Already-unit representatives pass through bit-exactly (reload path).
  Vec u = std::abs(n - 1.0) <= 1e-13 ? v : Vec(v / n);
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (std::abs(u[i]) > 1e-9) {
      if (u[i] < 0.0) u = -u;
      break;
    }
  }
  return u;
}

}  // namespace

Matrix::Matrix(Eigen::MatrixXd entries) : m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() < 2) {
    throw IllConditionedError("Matrix: need square entries with d >= 2");
  }
  for (Eigen::Index i = 0; i < m_.size(); ++i) {
    if (!std::isfinite(m_.data()[i])) {
      throw IllConditionedError("Matrix: non-finite entry");
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m_);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(m_.rows() - 1);
  if (!(smin > 0.0) || smax / smin > kMaxCondition) {
    std::ostringstream msg;
    msg << "Matrix: condition number " << (smin > 0.0 ? smax / smin : INFINITY)
        << " exceeds " << kMaxCondition;
    throw IllConditionedError(msg.str());
  }
  norm_ = smax;
  inv_norm_ = 1.0 / smin;
  inv_ = m_.inverse();
}

ProjPoint project(const Vec& v) { return ProjPoint(canonicalize(v)); }

DualProjPoint project_dual(const Vec& f) { return DualProjPoint(canonicalize(f)); }

ProjPoint act(const Matrix& g, const ProjPoint& x) { return project(g.mat() * x.rep()); }

DualProjPoint dual_act(const Matrix& g, const DualProjPoint& y) {
  return project_dual(g.mat().transpose() * y.rep());
}

double delta(const DualProjPoint& y, const ProjPoint& x) {
  const double v = std::abs(y.rep().dot(x.rep()));
  return v > 1.0 ? 1.0 : v;
}

double delta(const ProjPoint& x, const DualProjPoint& y) { return delta(y, x); }

namespace {
// |a - (a.b) b| equals the sine for unit vectors and stays accurate near 0,
// where 1 - (a.b)^2 would lose half the significand.
double sine_distance(const Vec& a, const Vec& b) {
  const double c = a.dot(b);
  const double s = (a - c * b).norm();
  return s > 1.0 ? 1.0 : s;
}
}  // namespace

double dist(const ProjPoint& a, const ProjPoint& b) { return sine_distance(a.rep(), b.rep()); }

double dist(const DualProjPoint& a, const DualProjPoint& b) {
  return sine_distance(a.rep(), b.rep());
}

double cocycle(const Matrix& g, const ProjPoint& x) { return std::log((g.mat() * x.rep()).norm()); }

double dual_cocycle(const Matrix& g, const DualProjPoint& y) {
  return std::log((g.mat().transpose() * y.rep()).norm());
}

double cohomology_residual(const Matrix& g, const ProjPoint& x, const DualProjPoint& y) {
  const double lhs_bracket = delta(y, act(g, x));
  const double rhs_bracket = delta(x, dual_act(g, y));
  const bool lhs_zero = lhs_bracket < kVanishingBracket;
  const bool rhs_zero = rhs_bracket < kVanishingBracket;
  if (lhs_zero && rhs_zero) return 0.0;
  if (lhs_zero || rhs_zero) {
    throw DegeneratePairError("cohomology_residual: exactly one bracket vanishes");
  }
  const double lhs = std::log(lhs_bracket) + cocycle(g, x);
  const double rhs = std::log(rhs_bracket) + dual_cocycle(g, y);
  return lhs - rhs;
}

double log_delta_clamped(double delta_value) {
  if (delta_value <= 0.0) return kLogUnderflowClamp;
  const double l = std::log(delta_value);
  return l < kLogUnderflowClamp ? kLogUnderflowClamp : l;
}

}  // namespace projwalk
