#include "projwalk/empirical.hpp"

#include <cmath>
#include <sstream>

#include "projwalk/errors.hpp"
#include "projwalk/rng.hpp"

namespace projwalk {

EmpiricalMeasure EmpiricalMeasure::uniform(std::vector<ProjPoint> pts) {
  EmpiricalMeasure m;
  const double w = pts.empty() ? 0.0 : 1.0 / static_cast<double>(pts.size());
  m.weights.assign(pts.size(), w);
  m.points = std::move(pts);
  return m;
}

void EmpiricalMeasure::validate() const {
  if (points.size() != weights.size()) {
    throw ConfigError("measure: point and weight counts differ");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ConfigError("measure: negative or NaN weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "measure: weights sum to " << sum << ", not 1";
    throw ConfigError(msg.str());
  }
}

double EmpiricalMeasure::effective_samples() const {
  double s2 = 0.0;
  for (double w : weights) s2 += w * w;
  return s2 > 0.0 ? 1.0 / s2 : 0.0;
}

double holder_moment(const EmpiricalMeasure& measure, const DualProjPoint& y, double alpha,
                     double* fraction_small) {
  double sum = 0.0;
  double small = 0.0;
  for (std::size_t i = 0; i < measure.points.size(); ++i) {
    const double d = delta(y, measure.points[i]);
    if (d < 1e-8) small += measure.weights[i];
    sum += alpha == 0.0 ? measure.weights[i]
                        : measure.weights[i] * std::pow(d > 0.0 ? d : kVanishingBracket, -alpha);
  }
  if (fraction_small != nullptr) *fraction_small = small;
  return sum;
}

EmpiricalMeasure push_forward(const MatrixEnsemble& ensemble, const EmpiricalMeasure& measure,
                              std::uint64_t seed) {
  EmpiricalMeasure out;
  out.points.reserve(measure.points.size());
  out.weights = measure.weights;
  for (std::size_t i = 0; i < measure.points.size(); ++i) {
    RngStream rng(seed, stream_domain::kStationary | i);
    out.points.push_back(act(ensemble.sample(rng), measure.points[i]));
  }
  return out;
}

double lipschitz_discrepancy(const EmpiricalMeasure& m1, const EmpiricalMeasure& m2,
                             int directions, std::uint64_t seed) {
  if (m1.points.empty() || m2.points.empty()) {
    throw ConfigError("lipschitz_discrepancy: empty measure");
  }
  const int d = m1.dim();
  double sup = 0.0;
  for (int j = 0; j < directions; ++j) {
    RngStream rng(seed, stream_domain::kDiagnostic | static_cast<std::uint64_t>(j));
    Vec f(d);
    for (int i = 0; i < d; ++i) f[i] = rng.next_normal();
    const DualProjPoint y = project_dual(f);
    double a = 0.0;
    for (std::size_t i = 0; i < m1.points.size(); ++i) a += m1.weights[i] * delta(y, m1.points[i]);
    double b = 0.0;
    for (std::size_t i = 0; i < m2.points.size(); ++i) b += m2.weights[i] * delta(y, m2.points[i]);
    sup = std::max(sup, std::abs(a - b));
  }
  return sup;
}

}  // namespace projwalk
