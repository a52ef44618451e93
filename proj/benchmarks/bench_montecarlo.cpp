#include <benchmark/benchmark.h>

#include "projwalk/montecarlo.hpp"

namespace {

projwalk::MatrixEnsemble walk_ensemble() {
  Eigen::MatrixXd d(2, 2);
  d << 2.0, 0.0, 0.0, 0.5;
  Eigen::MatrixXd r(2, 2);
  r << std::cos(0.7), -std::sin(0.7), std::sin(0.7), std::cos(0.7);
  std::vector<projwalk::Matrix> support;
  support.emplace_back(d);
  support.emplace_back(r);
  return projwalk::MatrixEnsemble::finite_support(std::move(support), {0.5, 0.5});
}

void SimulatePath(benchmark::State& state) {
  const auto mu = walk_ensemble();
  Eigen::VectorXd e1(2);
  e1 << 1.0, 0.0;
  const auto x0 = projwalk::project(e1);
  std::uint64_t stream = 0;
  for (auto _ : state) {
    projwalk::RngStream rng(99, stream++);
    auto path = projwalk::simulate_path(mu, x0, state.range(0), rng);
    benchmark::DoNotOptimize(path.back().log_norm);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(SimulatePath)->RangeMultiplier(4)->Range(256, 16384);

void LyapunovEstimate(benchmark::State& state) {
  const auto mu = walk_ensemble();
  Eigen::VectorXd e1(2);
  e1 << 1.0, 0.0;
  projwalk::PathConfig config;
  config.x0 = projwalk::project(e1);
  config.n = state.range(0);
  config.replicas = 64;
  config.seed = 7;
  for (auto _ : state) {
    auto est = projwalk::estimate_lyapunov(mu, config);
    benchmark::DoNotOptimize(est.value);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * config.replicas);
}
BENCHMARK(LyapunovEstimate)->RangeMultiplier(4)->Range(64, 1024);

}  // namespace
