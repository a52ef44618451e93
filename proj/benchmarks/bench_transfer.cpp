#include <benchmark/benchmark.h>

#include <memory>

#include "projwalk/ensemble.hpp"
#include "projwalk/grid.hpp"
#include "projwalk/transfer.hpp"

namespace {

projwalk::MatrixEnsemble bench_ensemble() {
  Eigen::MatrixXd d(2, 2);
  d << 2.0, 0.0, 0.0, 0.5;
  Eigen::MatrixXd r(2, 2);
  r << std::cos(0.7), -std::sin(0.7), std::sin(0.7), std::cos(0.7);
  std::vector<projwalk::Matrix> support;
  support.emplace_back(d);
  support.emplace_back(r);
  return projwalk::MatrixEnsemble::finite_support(std::move(support), {0.5, 0.5});
}

void BuildOperator(benchmark::State& state) {
  const auto mu = bench_ensemble();
  const auto grid = std::make_shared<projwalk::ProjGrid>(
      projwalk::ProjGrid::circle(static_cast<int>(state.range(0))));
  for (auto _ : state) {
    auto op = projwalk::build_operator(mu, grid, 0.5);
    benchmark::DoNotOptimize(op.a.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BuildOperator)->RangeMultiplier(2)->Range(64, 1024)->Complexity();

void DominantEigen(benchmark::State& state) {
  const auto mu = bench_ensemble();
  const auto grid = std::make_shared<projwalk::ProjGrid>(
      projwalk::ProjGrid::circle(static_cast<int>(state.range(0))));
  const auto op = projwalk::build_operator(mu, grid, 0.5);
  for (auto _ : state) {
    auto pair = projwalk::dominant_eigen(op);
    benchmark::DoNotOptimize(pair.kappa);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(DominantEigen)->RangeMultiplier(2)->Range(64, 512)->Complexity();

void PerturbedPower(benchmark::State& state) {
  const auto mu = bench_ensemble();
  const auto grid = std::make_shared<projwalk::ProjGrid>(projwalk::ProjGrid::circle(128));
  const projwalk::TransferAssembler assembler(mu, grid, false);
  const Eigen::VectorXcd phi = Eigen::VectorXcd::Ones(128);
  for (auto _ : state) {
    auto v = projwalk::perturbed_power(assembler, 0.3, 0.12, static_cast<int>(state.range(0)), phi);
    benchmark::DoNotOptimize(v.data());
  }
}
BENCHMARK(PerturbedPower)->RangeMultiplier(2)->Range(64, 512);

}  // namespace
