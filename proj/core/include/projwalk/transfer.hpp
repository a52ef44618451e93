#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "projwalk/ensemble.hpp"
#include "projwalk/grid.hpp"
#include "projwalk/projective.hpp"
#include "projwalk/rng.hpp"

namespace projwalk {

// Precomputed cocycle values and transport weights for one (ensemble, grid)
// pair; all operator matrices, real or complex, assemble from it.
class TransferAssembler {
 public:
  TransferAssembler(const MatrixEnsemble& ensemble, std::shared_ptr<const ProjGrid> grid,
                    bool dual);

  // Entry (i, j) is sum_g mu(g) e^{s sigma(g, x_i)} w_j(g x_i).
  Eigen::MatrixXd assemble(double s) const;
  // Entry (i, j) is sum_g mu(g) e^{it (sigma(g, x_i) - lambda)} w_j(g x_i).
  Eigen::MatrixXcd assemble_perturbed(double t, double lambda) const;

  const ProjGrid& grid() const { return *grid_; }
  std::shared_ptr<const ProjGrid> grid_ptr() const { return grid_; }
  bool dual() const { return dual_; }

 private:
  struct Link {
    double sigma;
    ProjGrid::Interp w;
  };
  std::shared_ptr<const ProjGrid> grid_;
  bool dual_;
  std::vector<double> probs_;
  std::vector<Link> links_;  // node-major, ensemble.size() per node
};

struct OperatorMatrix {
  double s = 0.0;
  bool dual = false;
  std::shared_ptr<const ProjGrid> grid;
  Eigen::MatrixXd a;  // row i approximates P_s phi at grid point i
};

inline constexpr std::pair<double, double> kDefaultSRange{-0.5, 2.0};

// Grid discretization of P_s (or P_s^* with dual = true).
OperatorMatrix build_operator(const MatrixEnsemble& ensemble,
                              std::shared_ptr<const ProjGrid> grid, double s, bool dual = false,
                              std::pair<double, double> s_range = kDefaultSRange);

struct EigenPair {
  double kappa = 0.0;
  Eigen::VectorXd r;      // right eigenvector, strictly positive
  Eigen::VectorXd nu;     // adjoint eigenvector normalized to mass 1
  double gap = 1.0;       // |lambda_2| / kappa estimate from deflation
  int iterations = 0;
  double residual_r = 0.0;   // |A r - kappa r|_inf
  double residual_nu = 0.0;  // |A' nu - kappa nu|_1
};

// Power iteration with deflation for the gap estimate. Rayleigh tolerance
// 1e-12, at most 1e5 iterations; throws NoGapError when the iteration cannot
// separate the dominant pair.
EigenPair dominant_eigen(const OperatorMatrix& op);

// Grid eigentriple (kappa, r_s, nu_s) plus the dual triple. nu_s has mass 1
// and r_s is scaled so nu_s(r_s) = 1 (the theta_s(r_s) = 1 convention); same
// on the dual side.
struct SpectralResult {
  double s = 0.0;
  std::shared_ptr<const ProjGrid> grid;
  std::shared_ptr<const ProjGrid> dual_grid;
  double kappa = 0.0;
  GridFunction r;
  GridMeasure nu;
  double gap = 1.0;  // ~1 means no measurable gap; NoGapError fires only on stall
  double dual_kappa = 0.0;
  GridFunction dual_r;
  GridMeasure dual_nu;
  double dual_gap = 1.0;

  // pi_s(phi) = nu_s(phi r_s) / nu_s(r_s); equals nu . (phi * r) under the
  // stored normalization.
  double stationary_expectation(const GridFunction& phi) const;
};

SpectralResult solve_spectral(const MatrixEnsemble& ensemble, std::shared_ptr<const ProjGrid> grid,
                              std::shared_ptr<const ProjGrid> dual_grid, double s,
                              std::pair<double, double> s_range = kDefaultSRange);

struct ConsistencyReport {
  double residual = 0.0;           // relative sup distance after scalar matching
  double scale = 1.0;              // matched scalar
  double small_bracket_mass = 0.0; // worst dual mass sitting at delta < 1e-8
};

// Distance between r_s and the bracket-integral formula
// x -> integral delta(x, y)^s dnu_s^*(y). Throws SingularBracketError when
// s < 0 and more than 1% of the dual mass sits at a vanishing bracket.
ConsistencyReport eigenfunction_consistency(const SpectralResult& spec);

// Markov operator Q_s phi = P_s(r_s phi) / (kappa(s) r_s), applied n times.
GridFunction markov_q_apply(const SpectralResult& spec, const OperatorMatrix& op,
                            GridFunction phi, int n);

// q_s^*(g, y) = e^{s sigma(g^*, y)} / kappa(s) * r_s^*(g^* y) / r_s^*(y).
// r_s^* is interpolated exactly as in the dual operator build, and the dual
// grid eigenvalue is used, so sum_g mu(g) q = 1 to eigen-residual precision.
double tilt_density(const SpectralResult& spec, const Matrix& g, const DualProjPoint& y);

// max over dual grid nodes of |sum_g mu(g) q_s^*(g, y) - 1|.
double tilt_normalization_deviation(const SpectralResult& spec, const MatrixEnsemble& ensemble);

enum class TiltMode {
  kWeighted,  // sample under mu^n, record the importance weight q_n^s
  kDirect,    // sample each g from the tilted kernel itself
};

struct TiltedPath {
  std::vector<ProjPoint> states;
  double log_norm = 0.0;  // sigma(G_n, x0)
  double weight = 1.0;    // q_n^s(x0, G_n), whichever mode produced the path
};

TiltedPath tilted_sample(const MatrixEnsemble& ensemble, const SpectralResult& spec,
                         const ProjPoint& x0, std::int64_t n, RngStream& rng, TiltMode mode);

struct HarmonicityReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
  double snap_distance = 0.0;  // worst distance from g^* y to its grid node
};

// Checks upsilon_s^y(phi) = sum_g mu(g) [g upsilon_s^{g^* y}](phi) q_s^*(g, y)
// at a dual grid node. Transported points g^* y snap to their nearest dual
// node; the snap distance is reported.
HarmonicityReport harmonicity_residual(const SpectralResult& spec, const MatrixEnsemble& ensemble,
                                       int y_index, const GridFunction& phi);

// n-fold application of the perturbed operator P_{it} to phi.
Eigen::VectorXcd perturbed_power(const TransferAssembler& assembler, double t, double lambda,
                                 int n, const Eigen::VectorXcd& phi);

struct FourierCheck {
  double value_re = 0.0;
  double value_im = 0.0;
  double target = 0.0;
  double error = 0.0;  // modulus of (value - target)
  int quadrature_nodes = 0;
  double step = 0.0;
};

// Composite-Simpson evaluation of
//   sigma sqrt(n) e^{n l^2 / (2 sigma^2)} integral e^{-itln} P_it^n(phi)(x) psi(t) dt
// against sqrt(2 pi) nu(phi) psi(0). psi must be supported in [-T, T] and
// differentiable near 0; the step resolves the phase (<= pi / (8 max(n|l|,
// n sigma))). Throws DegenerateSigmaError for sigma <= 0 and
// UnresolvedPhaseError when the node budget cannot honor the step bound.
FourierCheck llt_fourier_check(const TransferAssembler& assembler, const GridFunction& phi,
                               const std::function<double(double)>& psi, double support_t, int n,
                               double l, double lambda, double sigma, int x_index,
                               const GridMeasure& nu0, int max_nodes = 2000001);

}  // namespace projwalk
