#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <memory>
#include <vector>

#include "projwalk/projective.hpp"

namespace projwalk {

// Discretization of P^{d-1}. For d = 2 this is the equally spaced angle grid
// theta_i = i*pi/m on [0, pi) with uniform quadrature weights pi/m and linear
// interpolation in angle. For d >= 3 it is a quasi-uniform point cloud on the
// sphere quotient with nearest-neighbor transport; accuracy is limited and
// the spectral experiments are d = 2 first.
class ProjGrid {
 public:
  // Node angles are (i + offset) * pi / m. Dual grids take offset 0.5 so no
  // dual node is exactly orthogonal to a primal node (the bracket would
  // vanish there, and delta^s blows up for s < 0).
  static ProjGrid circle(int m, double offset = 0.0);
  static ProjGrid sphere(int d, int m, std::uint64_t seed = 0x9e3779b9);

  int dim() const { return d_; }
  int size() const { return m_; }
  bool is_circle() const { return d_ == 2; }
  std::uint64_t seed() const { return seed_; }
  double offset() const { return offset_; }

  const std::vector<ProjPoint>& points() const { return points_; }
  const ProjPoint& point(int i) const { return points_[static_cast<std::size_t>(i)]; }
  const Eigen::VectorXd& weights() const { return weights_; }

  // Grid resolution: pi/m for the circle, mean nearest-neighbor distance for
  // clouds.
  double spacing() const { return spacing_; }

  // Angle of the line in [0, pi); circle grids only.
  static double angle_of(const Vec& v);

  struct Interp {
    int j0 = 0;
    double w0 = 1.0;
    int j1 = -1;   // -1 when the point sits on a node or transport is NN
    double w1 = 0.0;
  };

  // Interpolation weights of an arbitrary (not necessarily unit) direction.
  // Circle grids interpolate linearly in angle with ties at cell boundaries
  // resolved toward the lower index; clouds snap to the nearest node.
  Interp locate(const Vec& direction) const;
  int nearest(const Vec& direction) const;

  // Evaluates a grid function at an arbitrary direction via locate().
  double interpolate(const Eigen::VectorXd& values, const Vec& direction) const;

 private:
  ProjGrid() = default;

  int d_ = 0;
  int m_ = 0;
  std::uint64_t seed_ = 0;
  double offset_ = 0.0;
  double spacing_ = 0.0;
  std::vector<ProjPoint> points_;
  Eigen::VectorXd weights_;
};

// The standard (primal, half-spacing-staggered dual) grid pair for spectral
// solves; sphere grids stagger by reseeding.
std::pair<std::shared_ptr<const ProjGrid>, std::shared_ptr<const ProjGrid>> make_grid_pair(
    int d, int m);

using GridFunction = Eigen::VectorXd;
using GridMeasure = Eigen::VectorXd;

}  // namespace projwalk
