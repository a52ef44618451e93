#include <CLI11.hpp>

#include <cstdint>
#include <iostream>

#include "config.hpp"
#include "experiments.hpp"
#include "projwalk/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"projwalk - random walks on GL(d,R) acting on projective space"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  int workers = 0;
  bool seed_set = false;
  bool out_set = false;

  CLI::App* run = app.add_subcommand("run", "run one experiment from a config file");
  run->add_option("--config", config_path, "experiment config file")->required();
  run->add_option("--seed", seed, "override experiment.seed")->each([&](const std::string&) {
    seed_set = true;
  });
  run->add_option("--out", out_dir, "override experiment.out")->each([&](const std::string&) {
    out_set = true;
  });
  run->add_option("--workers", workers, "override experiment.workers");

  CLI::App* validate = app.add_subcommand("validate", "dry-run config checks");
  validate->add_option("--config", config_path, "experiment config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    auto config = projwalk::cli::ExperimentConfig::from_file(config_path);
    if (seed_set) config.override_seed(seed);
    if (out_set) config.override_out(out_dir);
    if (workers > 0) config.override_workers(workers);

    if (app.got_subcommand(validate)) {
      projwalk::cli::validate_experiment(config);
      std::cout << "ok: experiment '" << config.name() << "' with ensemble '"
                << config.ensemble_path() << "'\n";
      return 0;
    }
    const int files = projwalk::cli::run_experiment(config);
    std::cout << "wrote " << files << " output files + manifest to " << config.out_dir() << "\n";
    return 0;
  } catch (const projwalk::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
}
