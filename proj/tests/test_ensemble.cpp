#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "projwalk/ensemble.hpp"
#include "projwalk/errors.hpp"
#include "test_helpers.hpp"

using namespace projwalk;

TEST_CASE("ensemble validation") {
  std::vector<Matrix> support;
  support.emplace_back(helpers::diag2(2.0, 0.5));
  CHECK_THROWS_AS(MatrixEnsemble::finite_support({}, {}), ConfigError);
  CHECK_THROWS_AS(MatrixEnsemble::finite_support(support, {0.5}), ConfigError);
  std::vector<Matrix> two = support;
  two.emplace_back(helpers::rotation2(0.3));
  CHECK_THROWS_AS(MatrixEnsemble::finite_support(two, {0.7, 0.4}), ConfigError);
  CHECK_THROWS_AS(MatrixEnsemble::finite_support(two, {1.0, 0.0}), ConfigError);
  CHECK_NOTHROW(MatrixEnsemble::finite_support(two, {0.5, 0.5}));
}

TEST_CASE("sampling replays per seed and matches frequencies") {
  std::vector<Matrix> support;
  support.emplace_back(helpers::diag2(2.0, 0.5));
  support.emplace_back(helpers::rotation2(0.3));
  const MatrixEnsemble mu = MatrixEnsemble::finite_support(support, {0.3, 0.7});

  RngStream a(9, 0);
  RngStream b(9, 0);
  for (int i = 0; i < 500; ++i) CHECK(mu.sample_index(a) == mu.sample_index(b));

  RngStream rng(10, 0);
  const long n = 1000000;
  long count0 = 0;
  for (long i = 0; i < n; ++i) {
    if (mu.sample_index(rng) == 0) ++count0;
  }
  const double f0 = static_cast<double>(count0) / n;
  CHECK(oracles::binomial_within(f0, 0.3, n));
}

TEST_CASE("oq generators preserve the form") {
  // rapidity 0 gives the identity
  const MatrixEnsemble trivial = oq_generators(1, 3, {}, {0.0});
  CHECK((trivial.matrix(0).mat() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() <
        1e-15);

  // cosh^2 - sinh^2 = 1 on the boosted basis vector
  const MatrixEnsemble boosted = oq_generators(1, 3, {}, {0.5});
  Eigen::VectorXd e1 = Eigen::VectorXd::Zero(3);
  e1[0] = 1.0;
  const Eigen::VectorXd image = boosted.matrix(0).mat() * e1;
  const double q = image[0] * image[0] - image[1] * image[1] - image[2] * image[2];
  CHECK(q == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_AS(oq_generators(0, 3, {}, {0.5}), BadSignatureError);
  CHECK_THROWS_AS(oq_generators(3, 3, {}, {0.5}), BadSignatureError);
  CHECK_THROWS_AS(oq_generators(1, 2, {}, {0.5}), BadSignatureError);
}

TEST_CASE("sampled words of length 100 stay isometries") {
  const MatrixEnsemble mu = helpers::example1_ensemble();
  Eigen::MatrixXd j = mu.signature_form();
  RngStream rng(12, 0);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Identity(3, 3);
    for (int k = 0; k < 100; ++k) w = mu.sample(rng).mat() * w;
    // rounding in the product scales with |W|^2, so measure q-preservation
    // relative to that scale
    const double scale = std::max(1.0, w.squaredNorm());
    const double residual = (w.transpose() * j * w - j).cwiseAbs().maxCoeff() / scale;
    CHECK(residual < 1e-8);
  }
}

TEST_CASE("draws from an isometry ensemble preserve q on random vectors") {
  const MatrixEnsemble mu = helpers::example1_ensemble();
  const Eigen::MatrixXd j = mu.signature_form();
  RngStream rng(13, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::MatrixXd g = mu.sample(rng).mat();
    const Eigen::VectorXd v = helpers::random_unit(rng, 3);
    const double before = v.dot(j * v);
    const Eigen::VectorXd gv = g * v;
    const double after = gv.dot(j * gv);
    CHECK(std::abs(after - before) < 1e-10);
  }
}

TEST_CASE("moment diagnostic is an exact finite sum") {
  std::vector<Matrix> single;
  single.emplace_back(helpers::diag2(2.0, 0.5));
  const MatrixEnsemble point_mass = MatrixEnsemble::finite_support(single, {1.0});
  const MomentReport report = moment_diagnostic(point_mass, {-0.5, 0.0, 1.0, 2.0}, 0.5);
  CHECK(report.moment_norm[0] == doctest::Approx(std::pow(2.0, -0.5)));
  CHECK(report.moment_norm[1] == 1.0);  // exact at s = 0
  CHECK(report.moment_norm[2] == doctest::Approx(2.0));
  CHECK(report.moment_norm[3] == doctest::Approx(4.0));
  CHECK(report.moment_n_alpha == doctest::Approx(std::pow(2.0, 0.5)));
  for (std::size_t i = 0; i < report.s_grid.size(); ++i) {
    CHECK(report.in_i_plus[i] == (report.s_grid[i] >= 0.0));
    CHECK(report.in_i_minus[i] == (report.s_grid[i] <= 0.0));
  }

  // two-term sum: {diag(2, 1/2), rotation(pi/2)} at s = 1 averages 2 and 1
  std::vector<Matrix> two;
  two.emplace_back(helpers::diag2(2.0, 0.5));
  two.emplace_back(helpers::rotation2(M_PI / 2.0));
  const MatrixEnsemble pair = MatrixEnsemble::finite_support(two, {0.5, 0.5});
  const MomentReport r2 = moment_diagnostic(pair, {1.0}, 0.5);
  CHECK(r2.moment_norm[0] == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("proximality diagnostic") {
  std::vector<Matrix> single;
  single.emplace_back(helpers::diag2(2.0, 0.5));
  const MatrixEnsemble point_mass = MatrixEnsemble::finite_support(single, {1.0});
  RngStream rng(14, 0);
  const ProximalityReport r1 = proximality_diagnostic(point_mass, 1, 5, rng);
  CHECK(r1.max_ratio == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(r1.proximal_evidence);

  std::vector<Matrix> rot;
  rot.emplace_back(helpers::rotation2(0.9));
  const MatrixEnsemble rotations = MatrixEnsemble::finite_support(rot, {1.0});
  RngStream rng2(15, 0);
  const ProximalityReport r2 = proximality_diagnostic(rotations, 8, 10, rng2);
  CHECK(r2.max_ratio == doctest::Approx(1.0).epsilon(1e-9));
  CHECK_FALSE(r2.proximal_evidence);

  RngStream rng3(16, 0);
  const ProximalityReport r3 = proximality_diagnostic(helpers::example1_ensemble(), 50, 20, rng3);
  CHECK(r3.proximal_evidence);
}
