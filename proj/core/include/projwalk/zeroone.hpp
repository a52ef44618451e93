#pragma once

#include <string>
#include <utility>
#include <vector>

#include "projwalk/empirical.hpp"
#include "projwalk/projective.hpp"

namespace projwalk {

enum class Verdict { kZero, kOne, kInconclusive };

std::string to_string(Verdict v);

// Band query around a log-bracket level t: does the measure put an atom on
// {log delta(y, x) = t}?
struct LevelSetQuery {
  DualProjPoint y;
  double t_log = 0.0;                // level in log scale, <= 0
  std::vector<double> h_seq;         // strictly decreasing positive halfwidths

  static std::vector<double> default_h_sequence();  // 0.1 down to 0.1/2^7
  void validate() const;
};

struct MassCurve {
  std::vector<double> h;
  std::vector<double> mass;     // nonincreasing (bands are nested)
  std::vector<double> ci_half;  // binomial-style band on each mass
  double atom = 0.0;            // extrapolated h -> 0 mass
  double atom_ci = 0.0;
  double alpha_hat = 0.0;       // fitted exponent of mass(h) - atom ~ b h^alpha
  Verdict verdict = Verdict::kInconclusive;
  std::size_t points = 0;
};

// Band masses of {|log delta(y, x) - t| <= h}. Verdict "one" when the
// extrapolated atom is >= 0.99, "zero" when it is <= 0.01 and the masses
// decay with a positive fitted exponent (or vanish outright); fewer than 1e4
// points always yields "inconclusive".
MassCurve level_set_mass(const EmpiricalMeasure& measure, const LevelSetQuery& query);

struct HyperplaneReport {
  std::vector<double> t;
  std::vector<double> mass;  // measure of {delta(y, x) <= t}
  double c_hat = 0.0;        // power-law fit mass ~ C t^alpha
  double alpha_hat = 0.0;
  Verdict verdict = Verdict::kInconclusive;
  bool a1_violation_flag = false;  // mass stuck near 1: support meets ker f
};

// Shrinking-neighborhood masses of the hyperplane {delta(y, .) = 0} with a
// power-law fit; strong irreducibility predicts verdict "zero".
HyperplaneReport hyperplane_mass(const EmpiricalMeasure& measure, const DualProjPoint& y,
                                 const std::vector<double>& t_seq);

// Homogeneous polynomial in d variables as an explicit monomial list.
class PolynomialSet {
 public:
  // monomials: (exponent vector, coefficient); all exponent sums must equal
  // the same total degree and some coefficient must be nonzero.
  PolynomialSet(int d, std::vector<std::pair<std::vector<int>, double>> monomials);

  static PolynomialSet coordinate_hyperplane(int d, int coordinate);
  // q(v) = v_1^2 + ... + v_p^2 - v_{p+1}^2 - ... - v_d^2.
  static PolynomialSet quadratic_form(int p, int d);

  int dim() const { return d_; }
  int degree() const { return degree_; }
  double eval(const Vec& v) const;

 private:
  int d_;
  int degree_;
  std::vector<std::pair<std::vector<int>, double>> monomials_;
};

// Band masses of {|p(v)| <= h |v|^deg} on unit representatives, with the
// same atom/verdict logic as level_set_mass.
MassCurve algebraic_mass(const EmpiricalMeasure& measure, const PolynomialSet& pset,
                         const std::vector<double>& h_seq);

// First candidate eta whose multiples -eta k (k <= k_max) stay more than
// `gap` away from every detected atom; atoms are entries with mass >= 0.5.
// Falls back to the first candidate when nothing is detected and throws
// NoValidOffsetError when every candidate collides.
double choose_offset(const std::vector<std::pair<double, double>>& atom_estimates,
                     const std::vector<double>& candidates, double gap, int k_max);

// Symmetric Hausdorff distance between the two point clouds under the sine
// metric. Exact sweep for d = 2; larger d uses a deterministic subsample cap.
double support_compare(const EmpiricalMeasure& m1, const EmpiricalMeasure& m2);

}  // namespace projwalk
