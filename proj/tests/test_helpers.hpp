#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <vector>

#include "projwalk/ensemble.hpp"
#include "projwalk/projective.hpp"
#include "projwalk/rng.hpp"

namespace helpers {

inline Eigen::MatrixXd rotation2(double angle) {
  Eigen::MatrixXd m(2, 2);
  m << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
  return m;
}

inline Eigen::MatrixXd diag2(double a, double b) {
  Eigen::MatrixXd m(2, 2);
  m << a, 0.0, 0.0, b;
  return m;
}

// The workhorse two-matrix ensemble: a proximal diagonal and an irrational
// rotation, equal weights. Strongly irreducible and non-arithmetic.
inline projwalk::MatrixEnsemble two_matrix_ensemble(double angle = 0.7) {
  std::vector<projwalk::Matrix> support;
  support.emplace_back(diag2(2.0, 0.5));
  support.emplace_back(rotation2(angle));
  return projwalk::MatrixEnsemble::finite_support(std::move(support), {0.5, 0.5});
}

// d = 3, p = 1 isometry ensemble: two rotations in the (2,3)-block and two
// boosts mixing coordinate 1 with each of 2 and 3.
inline projwalk::MatrixEnsemble example1_ensemble(double rapidity = 0.5) {
  return projwalk::oq_generators(1, 3, {0.9, 2.399963229728653}, {rapidity, rapidity});
}

inline projwalk::ProjPoint unit_point(std::initializer_list<double> coords) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v[i++] = c;
  return projwalk::project(v);
}

inline projwalk::DualProjPoint unit_dual(std::initializer_list<double> coords) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(coords.size()));
  Eigen::Index i = 0;
  for (double c : coords) v[i++] = c;
  return projwalk::project_dual(v);
}

inline Eigen::VectorXd random_unit(projwalk::RngStream& rng, int d) {
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v[i] = rng.next_normal();
  return v / v.norm();
}

// Random well-conditioned matrix with entries O(1).
inline projwalk::Matrix random_matrix(projwalk::RngStream& rng, int d) {
  while (true) {
    Eigen::MatrixXd m(d, d);
    for (int i = 0; i < d * d; ++i) m.data()[i] = rng.next_normal();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    if (svd.singularValues()(d - 1) > 0.05) return projwalk::Matrix(m);
  }
}

}  // namespace helpers
