#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "projwalk/errors.hpp"
#include "projwalk/serialize.hpp"
#include "test_helpers.hpp"

using namespace projwalk;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("doubles round trip through 17 digits") {
  RngStream rng(3, 0);
  for (int i = 0; i < 2000; ++i) {
    const double x = (rng.next_double() - 0.5) * std::pow(10.0, (rng.next_double() - 0.5) * 40.0);
    CHECK(parse_double(format_double(x), 0) == x);
  }
  CHECK(parse_double("0.1", 0) == 0.1);
  CHECK_THROWS_AS(parse_double("1.5x", 3), FormatError);
}

TEST_CASE("ensemble files round trip") {
  const auto path = temp_file("pw_ens_roundtrip.ens");
  const MatrixEnsemble mu = helpers::two_matrix_ensemble();
  save_ensemble(path.string(), mu);
  const MatrixEnsemble back = load_ensemble(path.string());
  REQUIRE(back.size() == mu.size());
  CHECK(back.dim() == 2);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    CHECK((back.matrix(i).mat() - mu.matrix(i).mat()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(back.prob(i) == mu.prob(i));
  }
}

TEST_CASE("generator grammar builds isometries") {
  const auto path = temp_file("pw_ens_generators.ens");
  {
    std::ofstream out(path);
    out << "# Example-1-style ensemble\n";
    out << "d = 3\n";
    out << "variant = isometry_generators\n";
    out << "p = 1\n";
    out << "generator = rotation 2 3 0.9\n";
    out << "prob = 0.25\n";
    out << "generator = rotation 2 3 2.399963229728653\n";
    out << "prob = 0.25\n";
    out << "generator = boost 1 2 0.5\n";
    out << "prob = 0.25\n";
    out << "generator = boost 1 3 0.5\n";
    out << "prob = 0.25\n";
  }
  const MatrixEnsemble mu = load_ensemble(path.string());
  CHECK(mu.variant() == MatrixEnsemble::Variant::kIsometryGenerators);
  CHECK(mu.dim() == 3);
  CHECK(mu.signature_p() == 1);
  for (std::size_t i = 0; i < mu.size(); ++i) CHECK(isometry_residual(mu.matrix(i), 1) < 1e-12);
  // and it matches the programmatic construction
  const MatrixEnsemble built = helpers::example1_ensemble();
  for (std::size_t i = 0; i < mu.size(); ++i) {
    bool found = false;
    for (std::size_t j = 0; j < built.size(); ++j) {
      if ((mu.matrix(i).mat() - built.matrix(j).mat()).cwiseAbs().maxCoeff() < 1e-15) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("ensemble file errors carry line numbers") {
  const auto path = temp_file("pw_ens_bad.ens");
  {
    std::ofstream out(path);
    out << "d = 2\n";
    out << "variant = finite_support\n";
    out << "matrix = 1 0 0\n";  // three entries only
  }
  try {
    load_ensemble(path.string());
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.line_number == 3);
  }

  {
    std::ofstream out(path);
    out << "d = 2\n";
    out << "variant = finite_support\n";
    out << "matrix = 2 0 0 0.5\n";
    out << "prob = 0.5\n";
    out << "matrix = 1 0 0 1\n";
    out << "prob = 0.6\n";  // sums to 1.1
  }
  CHECK_THROWS_AS(load_ensemble(path.string()), FormatError);
}

TEST_CASE("measure files round trip bitwise") {
  const auto path_a = temp_file("pw_measure_a.pwm");
  const auto path_b = temp_file("pw_measure_b.pwm");
  EmpiricalMeasure m;
  RngStream rng(5, 0);
  const std::size_t n = 257;
  for (std::size_t i = 0; i < n; ++i) {
    m.points.push_back(project(helpers::random_unit(rng, 3)));
  }
  m.weights.assign(n, 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    m.weights[i] = (1.0 + rng.next_double()) / (2.5 * n);
    acc += m.weights[i];
  }
  m.weights[n - 1] = 1.0 - acc;

  save_measure(path_a.string(), m);
  const EmpiricalMeasure loaded = load_measure(path_a.string());
  save_measure(path_b.string(), loaded);
  CHECK(slurp(path_a) == slurp(path_b));
  REQUIRE(loaded.size() == n);
  for (std::size_t i = 0; i < n; ++i) {
    CHECK((loaded.points[i].rep() - m.points[i].rep()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(loaded.weights[i] == m.weights[i]);
  }
}

TEST_CASE("measure file validation") {
  const auto path = temp_file("pw_measure_bad.pwm");
  {
    std::ofstream out(path);
    out << "projwalk measure v1\n";
    out << "d 2\n";
    out << "count 2\n";
    out << "1 0 0.5\n";  // truncated: one point missing
  }
  CHECK_THROWS_AS(load_measure(path.string()), FormatError);

  {
    std::ofstream out(path);
    out << "projwalk measure v1\n";
    out << "d 2\n";
    out << "count 2\n";
    out << "1 0 0.5\n";
    out << "0 1 0.6\n";  // weights sum to 1.1
  }
  try {
    load_measure(path.string());
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(std::string(e.what()).find("1.1") != std::string::npos);
  }
}

TEST_CASE("spectral results reload exactly") {
  const auto path = temp_file("pw_spectral.pws");
  const MatrixEnsemble mu = helpers::two_matrix_ensemble();
  const auto [grid, dual_grid] = make_grid_pair(2, 64);
  const SpectralResult spec = solve_spectral(mu, grid, dual_grid, 0.5);
  save_spectral(path.string(), spec);
  const SpectralResult back = load_spectral(path.string());
  CHECK(back.s == spec.s);
  CHECK(back.kappa == spec.kappa);
  CHECK(back.dual_kappa == spec.dual_kappa);
  CHECK(back.gap == spec.gap);
  CHECK((back.r - spec.r).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.nu - spec.nu).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.dual_r - spec.dual_r).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.dual_nu - spec.dual_nu).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.grid->size() == 64);
  CHECK(back.grid->offset() == 0.0);
  CHECK(back.dual_grid->offset() == dual_grid->offset());
}
