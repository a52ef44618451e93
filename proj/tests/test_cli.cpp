#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const char* kBin = PROJWALK_BIN;
const char* kEnsembleDir = PROJWALK_ENSEMBLE_DIR;

int run_command(const std::string& args) {
  const std::string cmd = std::string(kBin) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "projwalk_cli_test";
  fs::create_directories(dir);
  return dir;
}

void write_config(const fs::path& path, const std::string& name, const std::string& extra_params,
                  const std::string& out, unsigned seed, int workers) {
  std::ofstream cfg(path);
  cfg << "[experiment]\n";
  cfg << "name = " << name << "\n";
  cfg << "ensemble = " << kEnsembleDir << "/"
      << (name == "example1" ? "example1.ens" : "two_matrix.ens") << "\n";
  cfg << "out = " << out << "\n";
  cfg << "seed = " << seed << "\n";
  cfg << "workers = " << workers << "\n";
  cfg << "[params]\n" << extra_params;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("validate accepts a good config and rejects bad ones") {
  const fs::path dir = scratch();
  write_config(dir / "good.conf", "lyapunov", "n = 50\nreplicas = 20\n",
               (dir / "out_good").string(), 7, 1);
  CHECK(run_command("validate --config " + (dir / "good.conf").string()) == 0);

  {
    std::ofstream cfg(dir / "bad_name.conf");
    cfg << "[experiment]\nname = nonsense\nensemble = " << kEnsembleDir << "/two_matrix.ens\n";
  }
  CHECK(run_command("validate --config " + (dir / "bad_name.conf").string()) != 0);

  write_config(dir / "bad_range.conf", "spectrum", "s_grid = 0 5.0\n",
               (dir / "out_bad").string(), 7, 1);
  CHECK(run_command("validate --config " + (dir / "bad_range.conf").string()) != 0);

  {
    std::ofstream cfg(dir / "bad_file.conf");
    cfg << "[experiment]\nname = lyapunov\nensemble = /nonexistent.ens\n";
  }
  CHECK(run_command("validate --config " + (dir / "bad_file.conf").string()) != 0);
}

TEST_CASE("runs are byte-identical across reruns and worker counts") {
  const fs::path dir = scratch();
  struct Job {
    const char* name;
    const char* params;
    const char* data_file;
  };
  const Job jobs[] = {
      {"lyapunov", "n = 80\nreplicas = 120\n", "lyapunov.csv"},
      {"stationary", "n = 40\nreplicas = 30\nburn_in = 50\n", "stationary.pwm"},
      {"spectrum", "m = 64\ns_grid = 0 0.5\n", "spectrum.csv"},
      {"tilt", "m = 64\ns = 0.5\nn = 10\nreplicas = 400\n", "tilt.csv"},
      {"llt", "n_values = 40\nreplicas = 4000\nm = 64\n", "llt.csv"},
      {"zeroone", "n = 120\nreplicas = 90\nburn_in = 60\nt_values = -0.69\n",
       "zeroone_levels.csv"},
      {"example1", "n = 120\nreplicas = 90\nburn_in = 100\n", "example1.csv"},
      {"fourier", "m = 48\nn_values = 16 32\nm_moments = 64\n", "fourier.csv"},
  };
  for (const Job& job : jobs) {
    CAPTURE(job.name);
    const fs::path out_a = dir / (std::string(job.name) + "_a");
    const fs::path out_b = dir / (std::string(job.name) + "_b");
    fs::remove_all(out_a);
    fs::remove_all(out_b);
    write_config(dir / (std::string(job.name) + "_a.conf"), job.name, job.params, out_a.string(),
                 99, 1);
    write_config(dir / (std::string(job.name) + "_b.conf"), job.name, job.params, out_b.string(),
                 99, 3);
    REQUIRE(run_command("run --config " + (dir / (std::string(job.name) + "_a.conf")).string()) ==
            0);
    REQUIRE(run_command("run --config " + (dir / (std::string(job.name) + "_b.conf")).string()) ==
            0);
    // every data output byte-identical; manifests differ only in wall clock
    // and the echoed out/workers keys
    for (const auto& entry : fs::directory_iterator(out_a)) {
      const std::string file = entry.path().filename().string();
      if (file == "manifest.json" || file == "summary.json") continue;
      CAPTURE(file);
      CHECK(slurp(entry.path()) == slurp(out_b / file));
    }
    CHECK(fs::exists(out_a / job.data_file));
    CHECK(fs::exists(out_a / "manifest.json"));
  }
}

TEST_CASE("seed and out overrides change the run") {
  const fs::path dir = scratch();
  const fs::path out_a = dir / "ovr_a";
  const fs::path out_b = dir / "ovr_b";
  fs::remove_all(out_a);
  fs::remove_all(out_b);
  write_config(dir / "ovr.conf", "lyapunov", "n = 60\nreplicas = 80\n", out_a.string(), 5, 1);
  REQUIRE(run_command("run --config " + (dir / "ovr.conf").string()) == 0);
  REQUIRE(run_command("run --config " + (dir / "ovr.conf").string() + " --seed 6 --out " +
                      out_b.string()) == 0);
  CHECK(slurp(out_a / "lyapunov.csv") != slurp(out_b / "lyapunov.csv"));
}

TEST_CASE("unknown experiment exits nonzero") {
  const fs::path dir = scratch();
  {
    std::ofstream cfg(dir / "unknown.conf");
    cfg << "[experiment]\nname = warp\nensemble = " << kEnsembleDir << "/two_matrix.ens\n";
  }
  CHECK(run_command("run --config " + (dir / "unknown.conf").string()) != 0);
}
