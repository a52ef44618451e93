#include "projwalk/grid.hpp"

#include <cmath>
#include <limits>

#include "projwalk/errors.hpp"
#include "projwalk/rng.hpp"

namespace projwalk {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ProjGrid ProjGrid::circle(int m, double offset) {
  if (m < 4) throw ConfigError("grid: circle grid needs m >= 4");
  if (offset < 0.0 || offset >= 1.0) throw ConfigError("grid: offset must be in [0, 1)");
  ProjGrid g;
  g.d_ = 2;
  g.m_ = m;
  g.offset_ = offset;
  g.spacing_ = kPi / m;
  g.points_.reserve(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double theta = kPi * (i + offset) / m;
    Vec v(2);
    v << std::cos(theta), std::sin(theta);
    g.points_.push_back(project(v));
  }
  g.weights_ = Eigen::VectorXd::Constant(m, kPi / m);
  return g;
}

ProjGrid ProjGrid::sphere(int d, int m, std::uint64_t seed) {
  if (d < 3) throw ConfigError("grid: sphere grid needs d >= 3");
  if (m < 8) throw ConfigError("grid: sphere grid needs m >= 8");
  ProjGrid g;
  g.d_ = d;
  g.m_ = m;
  g.seed_ = seed;
  g.points_.reserve(static_cast<std::size_t>(m));
  if (d == 3) {
    // Fibonacci points on the upper hemisphere, canonicalized to lines.
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    for (int i = 0; i < m; ++i) {
      const double z = (i + 0.5) / m;  // cos of polar angle in (0, 1)
      const double r = std::sqrt(1.0 - z * z);
      const double phi = 2.0 * kPi * i / golden;
      Vec v(3);
      v << r * std::cos(phi), r * std::sin(phi), z;
      g.points_.push_back(project(v));
    }
  } else {
    // Deterministic Gaussian directions; quasi-uniform in distribution only.
    for (int i = 0; i < m; ++i) {
      RngStream rng(seed, static_cast<std::uint64_t>(i));
      Vec v(d);
      for (int k = 0; k < d; ++k) v[k] = rng.next_normal();
      g.points_.push_back(project(v));
    }
  }
  // Normalized total measure 1; nearest-neighbor cells share it evenly.
  g.weights_ = Eigen::VectorXd::Constant(m, 1.0 / m);
  double acc = 0.0;
  for (int i = 0; i < m; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      best = std::min(best, dist(g.points_[static_cast<std::size_t>(i)],
                                 g.points_[static_cast<std::size_t>(j)]));
    }
    acc += best;
  }
  g.spacing_ = acc / m;
  return g;
}

double ProjGrid::angle_of(const Vec& v) {
  double theta = std::atan2(v[1], v[0]);
  if (theta < 0.0) theta += kPi;
  if (theta >= kPi) theta -= kPi;
  return theta;
}

ProjGrid::Interp ProjGrid::locate(const Vec& direction) const {
  Interp out;
  if (is_circle()) {
    const double theta = angle_of(direction);
    double pos = theta / spacing_ - offset_;
    if (pos < 0.0) pos += m_;  // wrap into the top cell of an offset grid
    auto j0 = static_cast<int>(pos);
    if (j0 >= m_) j0 = m_ - 1;
    const double frac = pos - j0;
    out.j0 = j0;
    if (frac <= 0.0) {
      out.w0 = 1.0;
      out.j1 = -1;
      out.w1 = 0.0;
    } else {
      out.w0 = 1.0 - frac;
      out.j1 = (j0 + 1) % m_;  // the line at angle pi is the line at angle 0
      out.w1 = frac;
    }
    return out;
  }
  out.j0 = nearest(direction);
  return out;
}

int ProjGrid::nearest(const Vec& direction) const {
  const Vec u = direction / direction.norm();
  int best = 0;
  double best_align = -1.0;
  for (int j = 0; j < m_; ++j) {
    const double a = std::abs(points_[static_cast<std::size_t>(j)].rep().dot(u));
    if (a > best_align) {
      best_align = a;
      best = j;
    }
  }
  return best;
}

double ProjGrid::interpolate(const Eigen::VectorXd& values, const Vec& direction) const {
  const Interp w = locate(direction);
  double out = w.w0 * values[w.j0];
  if (w.j1 >= 0) out += w.w1 * values[w.j1];
  return out;
}

std::pair<std::shared_ptr<const ProjGrid>, std::shared_ptr<const ProjGrid>> make_grid_pair(
    int d, int m) {
  // A small dual offset keeps every dual node clear of exact orthogonality
  // with the primal nodes while barely perturbing the primal/dual eigenvalue
  // agreement, which degrades linearly in the offset.
  if (d == 2) {
    return {std::make_shared<ProjGrid>(ProjGrid::circle(m, 0.0)),
            std::make_shared<ProjGrid>(ProjGrid::circle(m, 0.01))};
  }
  return {std::make_shared<ProjGrid>(ProjGrid::sphere(d, m, 0x9e3779b9)),
          std::make_shared<ProjGrid>(ProjGrid::sphere(d, m, 0x517cc1b7))};
}

}  // namespace projwalk
