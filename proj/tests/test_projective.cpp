#include <doctest.h>

#include <cmath>

#include "projwalk/errors.hpp"
#include "projwalk/projective.hpp"
#include "test_helpers.hpp"

using namespace projwalk;
using helpers::unit_dual;
using helpers::unit_point;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("project canonicalizes representatives") {
  const ProjPoint a = unit_point({0, 3, 0});
  CHECK(a.rep()[0] == doctest::Approx(0.0));
  CHECK(a.rep()[1] == doctest::Approx(1.0));

  const ProjPoint b = unit_point({-2, 0});
  CHECK(b.rep()[0] == doctest::Approx(1.0));
  CHECK(b.rep()[1] == doctest::Approx(0.0));

  const ProjPoint c = unit_point({1, 1, 0});
  CHECK(c.rep()[0] == doctest::Approx(kInvSqrt2));
  CHECK(c.rep()[1] == doctest::Approx(kInvSqrt2));
  CHECK(c.rep()[2] == doctest::Approx(0.0));
}

TEST_CASE("project is scale invariant and unit") {
  RngStream rng(7, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 5;
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v[i] = rng.next_normal();
    const double t = (rng.next_double() - 0.5) * 20.0;
    if (std::abs(t) < 1e-3) continue;
    const ProjPoint p = project(v);
    const ProjPoint q = project(Eigen::VectorXd(t * v));
    CHECK(p.rep().norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((p.rep() - q.rep()).norm() < 1e-12);
  }
}

TEST_CASE("project rejects the zero vector") {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(3);
  CHECK_THROWS_AS(project(v), ZeroVectorError);
}

TEST_CASE("matrix guard and cached norms") {
  CHECK_THROWS_AS(Matrix(helpers::diag2(1.0, 1e-13)), IllConditionedError);
  const Matrix g(helpers::diag2(2.0, 0.5));
  CHECK(g.op_norm() == doctest::Approx(2.0));
  CHECK(g.inv_op_norm() == doctest::Approx(2.0));
  CHECK(g.bound_norm() == doctest::Approx(2.0));
}

TEST_CASE("act on points") {
  const Matrix id(Eigen::MatrixXd::Identity(2, 2));
  const ProjPoint x = unit_point({1, 1});
  CHECK(dist(act(id, x), x) == doctest::Approx(0.0));

  const Matrix g(helpers::diag2(2.0, 1.0));
  CHECK(dist(act(g, x), unit_point({2, 1})) == doctest::Approx(0.0));

  RngStream rng(11, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix r = helpers::random_matrix(rng, 2);
    const Matrix scaled(Eigen::MatrixXd(3.0 * r.mat()));
    const ProjPoint p = project(helpers::random_unit(rng, 2));
    CHECK(dist(act(scaled, p), act(r, p)) < 1e-12);
  }
}

TEST_CASE("dual action is the transpose") {
  const Matrix id(Eigen::MatrixXd::Identity(2, 2));
  const DualProjPoint y = unit_dual({1, 2});
  CHECK(dist(dual_act(id, y), y) == doctest::Approx(0.0));

  const Matrix g(helpers::diag2(2.0, 1.0));
  const DualProjPoint e1 = unit_dual({1, 0});
  CHECK(dist(dual_act(g, e1), e1) == doctest::Approx(0.0));

  // pairing consistency <g*f, v> = <f, gv> on raw representatives
  RngStream rng(13, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix r = helpers::random_matrix(rng, 3);
    const Eigen::VectorXd f = helpers::random_unit(rng, 3);
    const Eigen::VectorXd v = helpers::random_unit(rng, 3);
    const double lhs = (r.mat().transpose() * f).dot(v);
    const double rhs = f.dot(r.mat() * v);
    CHECK(std::abs(lhs - rhs) < 1e-12);
    // and dual_act returns the line of g^T f
    const DualProjPoint image = dual_act(r, project_dual(f));
    const Eigen::VectorXd expect = (r.mat().transpose() * f).normalized();
    CHECK(std::abs(std::abs(image.rep().dot(expect)) - 1.0) < 1e-12);
  }
}

TEST_CASE("bracket values") {
  CHECK(delta(unit_dual({1, 0}), unit_point({1, 0})) == doctest::Approx(1.0));
  CHECK(delta(unit_dual({1, 0}), unit_point({0, 1})) == doctest::Approx(0.0));
  CHECK(delta(unit_dual({1, 0, 0}), unit_point({1, 1, 0})) ==
        doctest::Approx(kInvSqrt2).epsilon(1e-12));
}

TEST_CASE("bracket lies in [0,1] and ignores representative scaling") {
  RngStream rng(17, 0);
  for (int trial = 0; trial < 500; ++trial) {
    Eigen::VectorXd f(3);
    Eigen::VectorXd v(3);
    for (int i = 0; i < 3; ++i) {
      f[i] = rng.next_normal();
      v[i] = rng.next_normal();
    }
    const double t1 = (rng.next_double() - 0.5) * 10.0;
    const double t2 = (rng.next_double() - 0.5) * 10.0;
    if (std::abs(t1) < 1e-3 || std::abs(t2) < 1e-3) continue;
    const double a = delta(project_dual(f), project(v));
    const double b = delta(project_dual(Eigen::VectorXd(t1 * f)), project(Eigen::VectorXd(t2 * v)));
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
    // symmetric in value
    CHECK(delta(project(v), project_dual(f)) == doctest::Approx(a));
  }
}

TEST_CASE("sine distance") {
  const ProjPoint e1 = unit_point({1, 0});
  const ProjPoint e2 = unit_point({0, 1});
  CHECK(dist(e1, e1) == doctest::Approx(0.0));
  CHECK(dist(e1, e2) == doctest::Approx(1.0));
  CHECK(dist(e1, unit_point({1, 1})) == doctest::Approx(kInvSqrt2));

  RngStream rng(19, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const ProjPoint a = project(helpers::random_unit(rng, 3));
    const ProjPoint b = project(helpers::random_unit(rng, 3));
    CHECK(dist(a, b) == doctest::Approx(dist(b, a)).epsilon(1e-12));
    CHECK(dist(a, a) < 1e-12);
  }
}

TEST_CASE("cocycle basics") {
  const Matrix id(Eigen::MatrixXd::Identity(2, 2));
  const ProjPoint e1 = unit_point({1, 0});
  CHECK(cocycle(id, e1) == doctest::Approx(0.0));

  const Matrix scaled(Eigen::MatrixXd(3.0 * Eigen::MatrixXd::Identity(2, 2)));
  CHECK(cocycle(scaled, e1) == doctest::Approx(std::log(3.0)));
  CHECK(dual_cocycle(scaled, unit_dual({0, 1})) == doctest::Approx(std::log(3.0)));

  // chain: diag(2,1) then rotation(pi/2), starting at e1, sums to log 2
  const Matrix g1(helpers::diag2(2.0, 1.0));
  const Matrix g2(helpers::rotation2(M_PI / 2.0));
  const double total = cocycle(g2, act(g1, e1)) + cocycle(g1, e1);
  CHECK(total == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  const Matrix product(Eigen::MatrixXd(g2.mat() * g1.mat()));
  CHECK(cocycle(product, e1) == doctest::Approx(total).epsilon(1e-12));
}

TEST_CASE("cocycle additivity over words of length 8") {
  RngStream rng(23, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 3;
    ProjPoint x = project(helpers::random_unit(rng, d));
    Eigen::MatrixXd word = Eigen::MatrixXd::Identity(d, d);
    double chain = 0.0;
    ProjPoint cursor = x;
    for (int k = 0; k < 8; ++k) {
      const Matrix g = helpers::random_matrix(rng, d);
      chain += cocycle(g, cursor);
      cursor = act(g, cursor);
      word = g.mat() * word;
    }
    CHECK(cocycle(Matrix(word), x) == doctest::Approx(chain).epsilon(1e-9));
  }
}

TEST_CASE("dual cocycle mirrors the transpose") {
  RngStream rng(29, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix g = helpers::random_matrix(rng, 3);
    const Eigen::VectorXd f = helpers::random_unit(rng, 3);
    CHECK(dual_cocycle(g, project_dual(f)) ==
          doctest::Approx(cocycle(g.transposed(), project(f))).epsilon(1e-12));
  }
}

TEST_CASE("cohomological identity") {
  const Matrix id(Eigen::MatrixXd::Identity(2, 2));
  CHECK(cohomology_residual(id, unit_point({1, 1}), unit_dual({1, 0})) == doctest::Approx(0.0));

  const Matrix g(helpers::diag2(2.0, 1.0));
  CHECK(cohomology_residual(g, unit_point({1, 0}), unit_dual({1, 0})) ==
        doctest::Approx(0.0).epsilon(1e-14));

  // both brackets vanish: convention 0
  CHECK(cohomology_residual(id, unit_point({0, 1}), unit_dual({1, 0})) == doctest::Approx(0.0));

  RngStream rng(31, 0);
  double worst = 0.0;
  for (int trial = 0; trial < 10000; ++trial) {
    const int d = trial % 2 == 0 ? 2 : 3;
    const Matrix g = helpers::random_matrix(rng, d);
    const ProjPoint x = project(helpers::random_unit(rng, d));
    const DualProjPoint y = project_dual(helpers::random_unit(rng, d));
    worst = std::max(worst, std::abs(cohomology_residual(g, x, y)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("log bracket clamp") {
  CHECK(log_delta_clamped(0.0) == doctest::Approx(kLogUnderflowClamp));
  CHECK(log_delta_clamped(1.0) == doctest::Approx(0.0));
  CHECK(log_delta_clamped(std::exp(-3.0)) == doctest::Approx(-3.0));
}
