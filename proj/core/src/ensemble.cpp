#include "projwalk/ensemble.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "projwalk/errors.hpp"

namespace projwalk {

namespace {

void validate_probs(const std::vector<Matrix>& support, const std::vector<double>& probs) {
  if (support.empty()) throw ConfigError("ensemble: empty support");
  if (support.size() != probs.size()) {
    throw ConfigError("ensemble: support and probability counts differ");
  }
  double sum = 0.0;
  for (double w : probs) {
    if (!(w > 0.0)) throw ConfigError("ensemble: probabilities must be positive");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg << "ensemble: probabilities sum to " << sum << ", not 1";
    throw ConfigError(msg.str());
  }
  const int d = support.front().dim();
  for (const Matrix& g : support) {
    if (g.dim() != d) throw ConfigError("ensemble: mixed matrix dimensions");
  }
}

}  // namespace

MatrixEnsemble::MatrixEnsemble(Variant v, int d, int p, std::vector<Matrix> support,
                               std::vector<double> probs)
    : variant_(v), d_(d), p_(p), support_(std::move(support)), probs_(std::move(probs)) {
  cumulative_.resize(probs_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    acc += probs_[i];
    cumulative_[i] = acc;
  }
  cumulative_.back() = 1.0;  // closes the last bin against rounding
}

MatrixEnsemble MatrixEnsemble::finite_support(std::vector<Matrix> support,
                                              std::vector<double> probs) {
  validate_probs(support, probs);
  const int d = support.front().dim();
  return MatrixEnsemble(Variant::kFiniteSupport, d, 0, std::move(support), std::move(probs));
}

MatrixEnsemble MatrixEnsemble::isometry(int p, std::vector<Matrix> generators,
                                        std::vector<double> probs) {
  validate_probs(generators, probs);
  const int d = generators.front().dim();
  if (p < 1 || p > d - 1) throw BadSignatureError("isometry ensemble: p outside [1, d-1]");
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const double res = isometry_residual(generators[i], p);
    if (res >= 1e-10) {
      std::ostringstream msg;
      msg << "isometry ensemble: generator " << i << " has q-residual " << res;
      throw ConfigError(msg.str());
    }
  }
  return MatrixEnsemble(Variant::kIsometryGenerators, d, p, std::move(generators),
                        std::move(probs));
}

std::size_t MatrixEnsemble::sample_index(RngStream& rng) const {
  const double u = rng.next_double();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
  return idx < support_.size() ? idx : support_.size() - 1;
}

Eigen::MatrixXd MatrixEnsemble::signature_form() const {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(d_, d_);
  for (int i = 0; i < d_; ++i) j(i, i) = i < p_ ? 1.0 : -1.0;
  return j;
}

double isometry_residual(const Matrix& g, int p) {
  const int d = g.dim();
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(d, d);
  for (int i = 0; i < d; ++i) j(i, i) = i < p ? 1.0 : -1.0;
  const Eigen::MatrixXd err = g.mat().transpose() * j * g.mat() - j;
  return err.cwiseAbs().maxCoeff();
}

MatrixEnsemble oq_generators(int p, int d, const std::vector<double>& angles,
                             const std::vector<double>& rapidities) {
  if (d < 3) throw BadSignatureError("oq_generators: d must be >= 3");
  if (p < 1 || p > d - 1) throw BadSignatureError("oq_generators: p outside [1, d-1]");

  // Planes that rotations may act on (inside one block) and that boosts mix
  // (one + with one - coordinate), 0-based.
  std::vector<std::pair<int, int>> rotation_planes;
  for (int i = 0; i < p; ++i)
    for (int k = i + 1; k < p; ++k) rotation_planes.emplace_back(i, k);
  for (int i = p; i < d; ++i)
    for (int k = i + 1; k < d; ++k) rotation_planes.emplace_back(i, k);
  std::vector<std::pair<int, int>> boost_planes;
  for (int i = 0; i < p; ++i)
    for (int k = p; k < d; ++k) boost_planes.emplace_back(i, k);

  if (!angles.empty() && rotation_planes.empty()) {
    throw BadSignatureError("oq_generators: no in-block plane for rotations");
  }

  std::vector<Matrix> gens;
  for (std::size_t a = 0; a < angles.size(); ++a) {
    const auto [i, k] = rotation_planes[a % rotation_planes.size()];
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
    m(i, i) = std::cos(angles[a]);
    m(k, k) = std::cos(angles[a]);
    m(i, k) = -std::sin(angles[a]);
    m(k, i) = std::sin(angles[a]);
    gens.emplace_back(std::move(m));
  }
  for (std::size_t b = 0; b < rapidities.size(); ++b) {
    const auto [i, k] = boost_planes[b % boost_planes.size()];
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
    m(i, i) = std::cosh(rapidities[b]);
    m(k, k) = std::cosh(rapidities[b]);
    m(i, k) = std::sinh(rapidities[b]);
    m(k, i) = std::sinh(rapidities[b]);
    gens.emplace_back(std::move(m));
  }
  if (gens.empty()) throw ConfigError("oq_generators: no generators requested");

  std::vector<double> probs(gens.size(), 1.0 / static_cast<double>(gens.size()));
  return MatrixEnsemble::isometry(p, std::move(gens), std::move(probs));
}

MomentReport moment_diagnostic(const MatrixEnsemble& ensemble, const std::vector<double>& s_grid,
                               double alpha) {
  MomentReport report;
  report.s_grid = s_grid;
  report.alpha = alpha;
  for (double s : s_grid) {
    double m_norm = 0.0;
    double m_bound = 0.0;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
      const double w = ensemble.prob(i);
      m_norm += s == 0.0 ? w : w * std::pow(ensemble.matrix(i).op_norm(), s);
      m_bound += s == 0.0 ? w : w * std::pow(ensemble.matrix(i).bound_norm(), std::abs(s));
    }
    report.moment_norm.push_back(m_norm);
    report.moment_bound.push_back(m_bound);
    report.in_i_plus.push_back(s >= 0.0 && std::isfinite(m_norm));
    report.in_i_minus.push_back(s <= 0.0 && std::isfinite(m_bound));
  }
  report.moment_n_alpha = 0.0;
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    report.moment_n_alpha += ensemble.prob(i) * std::pow(ensemble.matrix(i).bound_norm(), alpha);
  }
  return report;
}

ProximalityReport proximality_diagnostic(const MatrixEnsemble& ensemble, int word_length,
                                         int trials, RngStream& rng) {
  if (word_length < 1) throw ConfigError("proximality_diagnostic: word length must be >= 1");
  ProximalityReport report;
  report.word_length = word_length;
  report.trials = trials;
  const int d = ensemble.dim();
  for (int t = 0; t < trials; ++t) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Identity(d, d);
    for (int k = 0; k < word_length; ++k) {
      w = ensemble.sample(rng).mat() * w;
      // keeps entries in range over long words; eigenvalue ratios are
      // scale-invariant
      w /= w.cwiseAbs().maxCoeff();
    }
    Eigen::EigenSolver<Eigen::MatrixXd> eig(w, /*computeEigenvectors=*/false);
    std::vector<double> moduli(d);
    for (int i = 0; i < d; ++i) moduli[i] = std::abs(eig.eigenvalues()(i));
    std::sort(moduli.begin(), moduli.end(), std::greater<>());
    const double second = moduli[1];
    const double ratio = second > 0.0 ? moduli[0] / second : INFINITY;
    report.max_ratio = std::max(report.max_ratio, ratio);
  }
  report.proximal_evidence = report.max_ratio > 1.0 + 1e-6;
  return report;
}

}  // namespace projwalk
