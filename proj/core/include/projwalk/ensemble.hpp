#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "projwalk/projective.hpp"
#include "projwalk/rng.hpp"

namespace projwalk {

class RngStream;

// Finitely supported law mu on GL(d, R). Generator-built ensembles (isometry
// groups of a signature (p, d-p) quadratic form) are still finite support, so
// transfer-operator sums over g stay exact.
class MatrixEnsemble {
 public:
  enum class Variant { kFiniteSupport, kIsometryGenerators };

  static MatrixEnsemble finite_support(std::vector<Matrix> support, std::vector<double> probs);
  static MatrixEnsemble isometry(int p, std::vector<Matrix> generators, std::vector<double> probs);

  Variant variant() const { return variant_; }
  int dim() const { return d_; }
  int signature_p() const { return p_; }
  std::size_t size() const { return support_.size(); }
  const std::vector<Matrix>& support() const { return support_; }
  const std::vector<double>& probs() const { return probs_; }
  const Matrix& matrix(std::size_t i) const { return support_[i]; }
  double prob(std::size_t i) const { return probs_[i]; }

  // i.i.d. draw with law mu; identical (seed, stream) replays identically.
  std::size_t sample_index(RngStream& rng) const;
  const Matrix& sample(RngStream& rng) const { return support_[sample_index(rng)]; }

  // diag(+1 x p, -1 x (d-p)); only meaningful for the isometry variant.
  Eigen::MatrixXd signature_form() const;

 private:
  MatrixEnsemble(Variant v, int d, int p, std::vector<Matrix> support, std::vector<double> probs);

  Variant variant_;
  int d_;
  int p_;
  std::vector<Matrix> support_;
  std::vector<double> probs_;
  std::vector<double> cumulative_;
};

// max |(g^T J g - J)_ij| over a basis check; 0 for an exact isometry of q.
double isometry_residual(const Matrix& g, int p);

// Block rotations (inside the + and - blocks) and hyperbolic boosts (mixing
// one + and one - coordinate with cosh/sinh entries), all preserving
// q(v) = v_1^2 + ... + v_p^2 - v_{p+1}^2 - ... - v_d^2. Rotation angles and
// boost rapidities are assigned round-robin over the available planes.
// Probabilities are uniform over the generator list.
MatrixEnsemble oq_generators(int p, int d, const std::vector<double>& angles,
                             const std::vector<double>& rapidities);

struct MomentReport {
  std::vector<double> s_grid;
  // Exact finite sums: moment_norm[i] = sum_g mu(g) |g|^{s_i} and
  // moment_bound[i] = sum_g mu(g) N(g)^{|s_i|}.
  std::vector<double> moment_norm;
  std::vector<double> moment_bound;
  std::vector<bool> in_i_plus;   // s >= 0 and the |g|^s sum is finite
  std::vector<bool> in_i_minus;  // s <= 0 and the N(g)^{-s} sum is finite
  double alpha = 0.5;
  double moment_n_alpha = 0.0;  // sum_g mu(g) N(g)^alpha
};

MomentReport moment_diagnostic(const MatrixEnsemble& ensemble, const std::vector<double>& s_grid,
                               double alpha = 0.5);

struct ProximalityReport {
  int word_length = 0;
  int trials = 0;
  // max over sampled words of |lambda_1| / |lambda_2|.
  double max_ratio = 0.0;
  // true when some sampled word separates its top eigenvalue moduli by more
  // than 1e-6; heuristic evidence for proximality, not a proof.
  bool proximal_evidence = false;
};

ProximalityReport proximality_diagnostic(const MatrixEnsemble& ensemble, int word_length,
                                         int trials, RngStream& rng);

}  // namespace projwalk
