#pragma once

#include <Eigen/Core>

#include <memory>
#include <vector>

namespace projwalk {

using Vec = Eigen::VectorXd;

// Invertible d x d matrix with cached inverse and operator norms.
// Construction rejects matrices with 2-norm condition number above 1e12 so
// that every downstream log-quantity stays in double range.
class Matrix {
 public:
  explicit Matrix(Eigen::MatrixXd entries);

  const Eigen::MatrixXd& mat() const { return m_; }
  const Eigen::MatrixXd& inverse() const { return inv_; }
  int dim() const { return static_cast<int>(m_.rows()); }

  // Largest singular values of g and g^{-1}.
  double op_norm() const { return norm_; }
  double inv_op_norm() const { return inv_norm_; }
  // N(g) = max(|g|, |g^{-1}|).
  double bound_norm() const { return norm_ > inv_norm_ ? norm_ : inv_norm_; }
  double condition_number() const { return norm_ * inv_norm_; }

  Matrix transposed() const { return Matrix(m_.transpose()); }

  static constexpr double kMaxCondition = 1e12;

 private:
  Eigen::MatrixXd m_;
  Eigen::MatrixXd inv_;
  double norm_;
  double inv_norm_;
};

// A line R*v represented by a unit vector whose first coordinate of
// magnitude > 1e-9 is positive. The canonical form makes equality of points
// a plain comparison of representatives.
class ProjPoint {
 public:
  ProjPoint() = default;
  const Vec& rep() const { return rep_; }
  int dim() const { return static_cast<int>(rep_.size()); }

  friend ProjPoint project(const Vec& v);
  friend class DualProjPoint;

 private:
  explicit ProjPoint(Vec canonical) : rep_(std::move(canonical)) {}
  Vec rep_;
};

// A line of linear functionals, same canonical representation under the
// Euclidean identification of (R^d)^* with R^d.
class DualProjPoint {
 public:
  DualProjPoint() = default;
  const Vec& rep() const { return rep_; }
  int dim() const { return static_cast<int>(rep_.size()); }

  // The bracket and the metric treat points and duals through the same
  // coordinates; these conversions make that explicit at call sites.
  ProjPoint as_point() const { return ProjPoint(rep_); }
  static DualProjPoint from_point(const ProjPoint& x) { return DualProjPoint(x.rep()); }

  friend DualProjPoint project_dual(const Vec& f);

 private:
  explicit DualProjPoint(Vec canonical) : rep_(std::move(canonical)) {}
  Vec rep_;
};

// Canonical representative of R*v. Throws ZeroVectorError below 1e-300.
ProjPoint project(const Vec& v);
DualProjPoint project_dual(const Vec& f);

// gx = R(gv).
ProjPoint act(const Matrix& g, const ProjPoint& x);
// g*y = R(g^T f); the adjoint is the transpose under the Euclidean pairing.
DualProjPoint dual_act(const Matrix& g, const DualProjPoint& y);

// delta(y, x) = |<f, v>| / (|f| |v|), in [0, 1]. Symmetric in value, so both
// argument orders are provided.
double delta(const DualProjPoint& y, const ProjPoint& x);
double delta(const ProjPoint& x, const DualProjPoint& y);

// Sine of the angle between the two lines, in [0, 1].
double dist(const ProjPoint& a, const ProjPoint& b);
double dist(const DualProjPoint& a, const DualProjPoint& b);

// sigma(g, x) = log(|gv| / |v|).
double cocycle(const Matrix& g, const ProjPoint& x);
// sigma(g^*, y) = log(|g^T f| / |f|).
double dual_cocycle(const Matrix& g, const DualProjPoint& y);

// log delta(y, gx) + sigma(g, x) - log delta(x, g*y) - sigma(g*, y).
// Returns 0 when both brackets vanish; throws DegeneratePairError when
// exactly one does (both sides would differ by an infinite amount).
double cohomology_residual(const Matrix& g, const ProjPoint& x, const DualProjPoint& y);

// log of a bracket value clamped at the double underflow boundary, for
// reporting paths where delta == 0 must stay finite.
double log_delta_clamped(double delta_value);

inline constexpr double kLogUnderflowClamp = -745.0;
inline constexpr double kVanishingBracket = 1e-300;

}  // namespace projwalk
