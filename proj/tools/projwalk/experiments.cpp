#include "experiments.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "projwalk/empirical.hpp"
#include "projwalk/ensemble.hpp"
#include "projwalk/errors.hpp"
#include "projwalk/montecarlo.hpp"
#include "projwalk/serialize.hpp"
#include "projwalk/smoothing.hpp"
#include "projwalk/stats.hpp"
#include "projwalk/transfer.hpp"
#include "projwalk/zeroone.hpp"

namespace projwalk::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Outputs {
  fs::path dir;
  std::vector<std::string> files;

  std::ofstream open_csv(const std::string& name) {
    files.push_back(name);
    std::ofstream out(dir / name);
    if (!out) throw ConfigError("cannot write output file " + (dir / name).string());
    return out;
  }

  void note(const std::string& name) { files.push_back(name); }
};

ProjPoint start_point(const ExperimentConfig& config, int d) {
  if (config.has("x0")) {
    const auto coords = config.get_list("x0");
    if (static_cast<int>(coords.size()) != d) {
      throw ConfigError("config: params.x0 needs " + std::to_string(d) + " coordinates");
    }
    Eigen::VectorXd v(d);
    for (int i = 0; i < d; ++i) v[i] = coords[static_cast<std::size_t>(i)];
    return project(v);
  }
  Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
  v[0] = 1.0;
  if (d > 1) v[1] = 0.25;  // default start off the coordinate axes
  return project(v);
}

DualProjPoint dual_point(const ExperimentConfig& config, const std::string& key, int d) {
  Eigen::VectorXd v(d);
  if (config.has(key)) {
    const auto coords = config.get_list(key);
    if (static_cast<int>(coords.size()) != d) {
      throw ConfigError("config: params." + key + " needs " + std::to_string(d) +
                        " coordinates");
    }
    for (int i = 0; i < d; ++i) v[i] = coords[static_cast<std::size_t>(i)];
  } else {
    v.setZero();
    v[0] = 1.0;
  }
  return project_dual(v);
}

// lambda = (log kappa)'(0) and sigma^2 = (log kappa)''(0) by centered
// differences of the grid eigenvalue.
std::pair<double, double> operator_lambda_sigma(const MatrixEnsemble& mu, int m, double fd) {
  const auto grid = std::make_shared<ProjGrid>(
      mu.dim() == 2 ? ProjGrid::circle(m) : ProjGrid::sphere(mu.dim(), m));
  const double k_plus = dominant_eigen(build_operator(mu, grid, fd)).kappa;
  const double k_minus = dominant_eigen(build_operator(mu, grid, -fd)).kappa;
  const double lambda = (std::log(k_plus) - std::log(k_minus)) / (2.0 * fd);
  const double sigma2 = (std::log(k_plus) + std::log(k_minus)) / (fd * fd);
  if (!(sigma2 > 0.0)) throw DegenerateSigmaError("operator route: sigma^2 <= 0");
  return {lambda, std::sqrt(sigma2)};
}

void write_manifest(const ExperimentConfig& config, Outputs& outputs, double wall_ms) {
  json manifest;
  manifest["code_version"] = kCodeVersion;
  manifest["experiment"] = config.name();
  manifest["seed"] = config.seed();
  manifest["workers"] = config.workers();
  manifest["wall_clock_ms"] = wall_ms;
  manifest["config_echo"] = json::object();
  for (const auto& [key, value] : config.raw()) manifest["config_echo"][key] = value;
  manifest["outputs"] = json::array();
  for (const auto& file : outputs.files) {
    manifest["outputs"].push_back(
        {{"file", file}, {"fnv64", file_checksum((outputs.dir / file).string())}});
  }
  std::ofstream out(outputs.dir / "manifest.json");
  out << manifest.dump(2) << "\n";
}

void write_summary(Outputs& outputs, const json& summary) {
  outputs.note("summary.json");
  std::ofstream out(outputs.dir / "summary.json");
  out << summary.dump(2) << "\n";
}

json estimate_to_json(const EstimateCI& e) {
  return {{"value", e.value}, {"ci_half_width", e.half_width}, {"batches", e.batches}};
}

// ---------------------------------------------------------------------------

json run_lyapunov(const ExperimentConfig& config, const MatrixEnsemble& mu, Outputs& outputs) {
  PathConfig path;
  path.n = config.get_int_or("n", 2000);
  path.replicas = config.get_int_or("replicas", 2000);
  path.seed = config.seed();
  path.workers = config.workers();
  path.x0 = start_point(config, mu.dim());
  const EstimateCI lambda = estimate_lyapunov(mu, path);
  const VarianceEstimate sigma2 = estimate_variance(mu, path, lambda.value);

  auto csv = outputs.open_csv("lyapunov.csv");
  csv << "n,replicas,lambda_hat,lambda_ci_half,sigma2_hat,sigma2_ci_half,sigma2_zero_flag\n";
  csv << path.n << ',' << path.replicas << ',' << format_double(lambda.value) << ','
      << format_double(lambda.half_width) << ',' << format_double(sigma2.value) << ','
      << format_double(sigma2.half_width) << ',' << (sigma2.consistent_with_zero ? 1 : 0) << "\n";

  json summary;
  summary["lambda"] = estimate_to_json(lambda);
  summary["sigma2"] = {{"value", sigma2.value},
                       {"ci_half_width", sigma2.half_width},
                       {"consistent_with_zero", sigma2.consistent_with_zero}};
  return summary;
}

json run_stationary(const ExperimentConfig& config, const MatrixEnsemble& mu, Outputs& outputs) {
  PathConfig path;
  path.n = config.get_int_or("n", 500);
  path.replicas = config.get_int_or("replicas", 100);
  path.burn_in = config.get_int_or("burn_in", 200);
  path.seed = config.seed();
  path.workers = config.workers();
  path.x0 = start_point(config, mu.dim());
  const EmpiricalMeasure measure = empirical_stationary(mu, path);

  outputs.note("stationary.pwm");
  save_measure((outputs.dir / "stationary.pwm").string(), measure);

  const EmpiricalMeasure moved = push_forward(mu, measure, config.seed() ^ 0x51a7);
  const double discrepancy = lipschitz_discrepancy(measure, moved, 16, config.seed() ^ 0xd15c);
  const double threshold = 2.0 / std::sqrt(static_cast<double>(measure.size()));

  auto csv = outputs.open_csv("stationary.csv");
  csv << "samples,bl_discrepancy,threshold,stationary_pass\n";
  csv << measure.size() << ',' << format_double(discrepancy) << ',' << format_double(threshold)
      << ',' << (discrepancy < threshold ? 1 : 0) << "\n";

  json summary;
  summary["samples"] = measure.size();
  summary["bl_discrepancy"] = discrepancy;
  summary["threshold"] = threshold;
  summary["stationary_pass"] = discrepancy < threshold;
  return summary;
}

json run_spectrum(const ExperimentConfig& config, const MatrixEnsemble& mu, Outputs& outputs) {
  const int m = static_cast<int>(config.get_int_or("m", 512));
  const auto s_grid = config.get_list_or("s_grid", {-0.1, 0.0, 0.5, 1.0});
  const auto [grid, dual_grid] = make_grid_pair(mu.dim(), m);

  auto csv = outputs.open_csv("spectrum.csv");
  csv << "s,kappa,dual_kappa,kappa_diff,gap,dual_gap,eigenfunction_residual,"
         "small_bracket_mass\n";
  json rows = json::array();
  for (std::size_t i = 0; i < s_grid.size(); ++i) {
    const double s = s_grid[i];
    const SpectralResult spec = solve_spectral(mu, grid, dual_grid, s);
    const ConsistencyReport consistency = eigenfunction_consistency(spec);
    const std::string file = "spectral_" + std::to_string(i) + ".pws";
    outputs.note(file);
    save_spectral((outputs.dir / file).string(), spec);
    csv << format_double(s) << ',' << format_double(spec.kappa) << ','
        << format_double(spec.dual_kappa) << ','
        << format_double(std::abs(spec.kappa - spec.dual_kappa)) << ','
        << format_double(spec.gap) << ',' << format_double(spec.dual_gap) << ','
        << format_double(consistency.residual) << ','
        << format_double(consistency.small_bracket_mass) << "\n";
    rows.push_back({{"s", s},
                    {"kappa", spec.kappa},
                    {"dual_kappa", spec.dual_kappa},
                    {"gap", spec.gap},
                    {"eigenfunction_residual", consistency.residual},
                    {"file", file}});
  }
  json summary;
  summary["m"] = m;
  summary["rows"] = rows;
  return summary;
}

json run_tilt(const ExperimentConfig& config, const MatrixEnsemble& mu, Outputs& outputs) {
  const int m = static_cast<int>(config.get_int_or("m", 512));
  const double s = config.get_double_or("s", 0.5);
  const auto n = config.get_int_or("n", 20);
  const auto replicas = config.get_int_or("replicas", 20000);
  const auto [grid, dual_grid] = make_grid_pair(mu.dim(), m);
  const SpectralResult spec = solve_spectral(mu, grid, dual_grid, s);
  const double normalization_dev = tilt_normalization_deviation(spec, mu);
  const ProjPoint x0 = start_point(config, mu.dim());

  std::vector<double> weights(static_cast<std::size_t>(replicas));
  std::vector<double> exp_s_sigma(static_cast<std::size_t>(replicas));
  std::vector<double> drift(static_cast<std::size_t>(replicas));
  parallel_for_index(replicas, config.workers(), [&](std::int64_t r) {
    RngStream rng(config.seed(), stream_domain::kTilted | static_cast<std::uint64_t>(r));
    const TiltedPath weighted = tilted_sample(mu, spec, x0, n, rng, TiltMode::kWeighted);
    weights[static_cast<std::size_t>(r)] = weighted.weight;
    exp_s_sigma[static_cast<std::size_t>(r)] = std::exp(s * weighted.log_norm);
    RngStream rng_direct(config.seed(),
                         stream_domain::kTilted | (1ULL << 55) | static_cast<std::uint64_t>(r));
    const TiltedPath direct = tilted_sample(mu, spec, x0, n, rng_direct, TiltMode::kDirect);
    drift[static_cast<std::size_t>(r)] = direct.log_norm / static_cast<double>(n);
  });
  const EstimateCI weight_mean = batch_means(weights);
  const EstimateCI exp_mean = batch_means(exp_s_sigma);
  const EstimateCI drift_mean = batch_means(drift);
  const double kappa_weight = std::pow(exp_mean.value, 1.0 / static_cast<double>(n));

  const double fd = 1e-3;
  const double k_plus = dominant_eigen(build_operator(mu, grid, s + fd)).kappa;
  const double k_minus = dominant_eigen(build_operator(mu, grid, s - fd)).kappa;
  const double drift_target = (std::log(k_plus) - std::log(k_minus)) / (2.0 * fd);

  auto csv = outputs.open_csv("tilt.csv");
  csv << "s,n,replicas,kappa,weight_mean,weight_ci_half,kappa_weight_est,drift,drift_ci_half,"
         "drift_target,normalization_dev\n";
  csv << format_double(s) << ',' << n << ',' << replicas << ',' << format_double(spec.kappa) << ','
      << format_double(weight_mean.value) << ',' << format_double(weight_mean.half_width) << ','
      << format_double(kappa_weight) << ',' << format_double(drift_mean.value) << ','
      << format_double(drift_mean.half_width) << ',' << format_double(drift_target) << ','
      << format_double(normalization_dev) << "\n";

  json summary;
  summary["s"] = s;
  summary["kappa"] = spec.kappa;
  summary["weight_mean"] = estimate_to_json(weight_mean);
  summary["kappa_weight_est"] = kappa_weight;
  summary["drift"] = estimate_to_json(drift_mean);
  summary["drift_target"] = drift_target;
  summary["normalization_dev"] = normalization_dev;
  return summary;
}

json run_llt(const ExperimentConfig& config, const MatrixEnsemble& mu, Outputs& outputs) {
  const auto n_values = config.get_list_or("n_values", {250.0, 500.0, 1000.0});
  const auto replicas = config.get_int_or("replicas", 1000000);
  const double a1 = config.get_double_or("a1", -1.0);
  const double a2 = config.get_double_or("a2", 1.0);
  if (!(a1 <= a2)) throw ConfigError("config: params.a1 must be <= params.a2");

  double lambda;
  double sigma;
  if (config.has("lambda") && config.has("sigma")) {
    lambda = config.get_double("lambda");
    sigma = config.get_double("sigma");
  } else {
    const int m = static_cast<int>(config.get_int_or("m", 512));
    std::tie(lambda, sigma) = operator_lambda_sigma(mu, m, 1e-3);
  }

  const ProjPoint x0 = start_point(config, mu.dim());
  const DualProjPoint y = dual_point(config, "f", mu.dim());

  auto csv = outputs.open_csv("llt.csv");
  csv << "n,replicas,hits,p_hat,target,ratio,ratio_lo,ratio_hi\n";
  json rows = json::array();
  for (double n_raw : n_values) {
    const auto n = static_cast<std::int64_t>(n_raw);
    const LltCount count = coefficient_llt_count(mu, y, x0, a1, a2, n, replicas, lambda, sigma,
                                                 config.seed(), config.workers());
    csv << n << ',' << count.replicas << ',' << count.hits << ',' << format_double(count.p_hat)
        << ',' << format_double(count.target) << ',' << format_double(count.ratio) << ','
        << format_double(count.ratio_lo) << ',' << format_double(count.ratio_hi) << "\n";
    rows.push_back({{"n", n},
                    {"p_hat", count.p_hat},
                    {"target", count.target},
                    {"ratio", count.ratio},
                    {"ratio_lo", count.ratio_lo},
                    {"ratio_hi", count.ratio_hi}});
  }
  json summary;
  summary["lambda"] = lambda;
  summary["sigma"] = sigma;
  summary["a1"] = a1;
  summary["a2"] = a2;
  summary["rows"] = rows;
  return summary;
}

EmpiricalMeasure measure_for_masses(const ExperimentConfig& config, const MatrixEnsemble& mu,
                                    Outputs& outputs) {
  if (config.has("measure")) {
    return load_measure(config.get_string("measure"));
  }
  PathConfig path;
  path.n = config.get_int_or("n", 1000);
  path.replicas = config.get_int_or("replicas", 100);
  path.burn_in = config.get_int_or("burn_in", 500);
  path.seed = config.seed();
  path.workers = config.workers();
  path.x0 = start_point(config, mu.dim());
  const EmpiricalMeasure measure = empirical_stationary(mu, path);
  outputs.note("measure.pwm");
  save_measure((outputs.dir / "measure.pwm").string(), measure);
  return measure;
}

json run_zeroone(const ExperimentConfig& config, const MatrixEnsemble& mu, Outputs& outputs) {
  const EmpiricalMeasure measure = measure_for_masses(config, mu, outputs);
  const DualProjPoint y = dual_point(config, "y", mu.dim());
  const auto t_values = config.get_list_or("t_values", {std::log(0.5)});
  const auto h_seq = config.get_list_or("h_seq", LevelSetQuery::default_h_sequence());

  auto csv = outputs.open_csv("zeroone_levels.csv");
  csv << "t_log,h,mass,ci_half\n";
  json verdicts = json::array();
  std::vector<std::pair<double, double>> atoms;
  for (double t : t_values) {
    LevelSetQuery query;
    query.y = y;
    query.t_log = t;
    query.h_seq = h_seq;
    const MassCurve curve = level_set_mass(measure, query);
    for (std::size_t j = 0; j < curve.h.size(); ++j) {
      csv << format_double(t) << ',' << format_double(curve.h[j]) << ','
          << format_double(curve.mass[j]) << ',' << format_double(curve.ci_half[j]) << "\n";
    }
    atoms.emplace_back(t, curve.atom);
    verdicts.push_back({{"t_log", t},
                        {"atom", curve.atom},
                        {"atom_ci", curve.atom_ci},
                        {"alpha_hat", curve.alpha_hat},
                        {"verdict", to_string(curve.verdict)}});
  }

  const auto t_seq = config.get_list_or("hyperplane_t", {0.1, 0.05, 0.025, 0.0125, 0.00625});
  const HyperplaneReport hyper = hyperplane_mass(measure, y, t_seq);
  auto hcsv = outputs.open_csv("zeroone_hyperplane.csv");
  hcsv << "t,mass\n";
  for (std::size_t j = 0; j < t_seq.size(); ++j) {
    hcsv << format_double(t_seq[j]) << ',' << format_double(hyper.mass[j]) << "\n";
  }

  json summary;
  summary["level_sets"] = verdicts;
  summary["hyperplane"] = {{"alpha_hat", hyper.alpha_hat},
                           {"c_hat", hyper.c_hat},
                           {"verdict", to_string(hyper.verdict)},
                           {"a1_violation_flag", hyper.a1_violation_flag}};
  const auto candidates = config.get_list_or("eta_candidates", {0.1, 0.11, 0.115});
  try {
    summary["eta"] = choose_offset(atoms, candidates, config.get_double_or("eta_gap", 0.005),
                                   static_cast<int>(config.get_int_or("eta_k_max", 40)));
  } catch (const NoValidOffsetError& e) {
    summary["eta_error"] = e.what();
  }
  return summary;
}

json run_example1(const ExperimentConfig& config, const MatrixEnsemble& mu, Outputs& outputs) {
  if (mu.variant() != MatrixEnsemble::Variant::kIsometryGenerators || mu.dim() != 3 ||
      mu.signature_p() != 1) {
    throw ConfigError("example1 requires an isometry ensemble with d = 3, p = 1");
  }
  PathConfig path;
  path.n = config.get_int_or("n", 1000);
  path.replicas = config.get_int_or("replicas", 100);
  path.burn_in = config.get_int_or("burn_in", 500);
  path.seed = config.seed();
  path.workers = config.workers();
  path.x0 = start_point(config, 3);
  const EmpiricalMeasure measure = empirical_stationary(mu, path);
  outputs.note("example1.pwm");
  save_measure((outputs.dir / "example1.pwm").string(), measure);

  const DualProjPoint y = dual_point(config, "y", 3);
  const double cone_level = 1.0 / std::sqrt(2.0);
  const double band = config.get_double_or("band", 0.01);
  double mass_near_cone = 0.0;
  for (std::size_t i = 0; i < measure.size(); ++i) {
    if (std::abs(delta(y, measure.points[i]) - cone_level) < band) {
      mass_near_cone += measure.weights[i];
    }
  }

  LevelSetQuery on_cone;
  on_cone.y = y;
  on_cone.t_log = std::log(cone_level);
  on_cone.h_seq = LevelSetQuery::default_h_sequence();
  const MassCurve cone_curve = level_set_mass(measure, on_cone);
  LevelSetQuery off_cone = on_cone;
  off_cone.t_log = std::log(config.get_double_or("off_level", 0.3));
  const MassCurve off_curve = level_set_mass(measure, off_cone);

  const MassCurve qform_curve =
      algebraic_mass(measure, PolynomialSet::quadratic_form(1, 3), on_cone.h_seq);

  const auto candidates = config.get_list_or("eta_candidates", {0.1, 0.11, 0.115});
  json eta;
  try {
    eta = choose_offset({{on_cone.t_log, cone_curve.atom}}, candidates,
                        config.get_double_or("eta_gap", 0.005),
                        static_cast<int>(config.get_int_or("eta_k_max", 40)));
  } catch (const NoValidOffsetError& e) {
    eta = e.what();
  }

  auto csv = outputs.open_csv("example1.csv");
  csv << "samples,band_halfwidth,mass_near_cone,atom_at_cone,verdict_at_cone,verdict_off_cone,"
         "qform_atom,qform_verdict\n";
  csv << measure.size() << ',' << format_double(band) << ',' << format_double(mass_near_cone)
      << ',' << format_double(cone_curve.atom) << ',' << to_string(cone_curve.verdict) << ','
      << to_string(off_curve.verdict) << ',' << format_double(qform_curve.atom) << ','
      << to_string(qform_curve.verdict) << "\n";

  json summary;
  summary["samples"] = measure.size();
  summary["mass_near_cone"] = mass_near_cone;
  summary["cone"] = {{"t_log", on_cone.t_log},
                     {"atom", cone_curve.atom},
                     {"verdict", to_string(cone_curve.verdict)}};
  summary["off_cone"] = {{"t_log", off_cone.t_log}, {"verdict", to_string(off_curve.verdict)}};
  summary["qform"] = {{"atom", qform_curve.atom}, {"verdict", to_string(qform_curve.verdict)}};
  summary["eta"] = eta;
  return summary;
}

json run_fourier(const ExperimentConfig& config, const MatrixEnsemble& mu, Outputs& outputs) {
  if (mu.dim() != 2) throw ConfigError("fourier requires a d = 2 ensemble");
  const int m = static_cast<int>(config.get_int_or("m", 128));
  const auto n_values = config.get_list_or("n_values", {64.0, 128.0, 256.0, 512.0});
  const double support_t = config.get_double_or("psi_support", 0.5);
  const double l = config.get_double_or("l", 0.0);

  double lambda;
  double sigma;
  if (config.has("lambda") && config.has("sigma")) {
    lambda = config.get_double("lambda");
    sigma = config.get_double("sigma");
  } else {
    std::tie(lambda, sigma) =
        operator_lambda_sigma(mu, static_cast<int>(config.get_int_or("m_moments", 512)), 1e-3);
  }

  const auto [grid, dual_grid] = make_grid_pair(2, m);
  const TransferAssembler assembler(mu, grid, false);
  const SpectralResult base = solve_spectral(mu, grid, dual_grid, 0.0);
  const GridFunction ones = GridFunction::Ones(m);
  const int x_index = static_cast<int>(config.get_int_or("x_index", m / 3));
  // triangular bump: its kink at the origin realizes the 1/sqrt(n) envelope
  const auto psi = [support_t](double t) {
    const double a = std::abs(t);
    return a >= support_t ? 0.0 : 1.0 - a / support_t;
  };

  auto csv = outputs.open_csv("fourier.csv");
  csv << "n,nodes,step,value_re,value_im,target,error\n";
  std::vector<double> log_n;
  std::vector<double> log_err;
  json rows = json::array();
  for (double n_raw : n_values) {
    const int n = static_cast<int>(n_raw);
    const FourierCheck check =
        llt_fourier_check(assembler, ones, psi, support_t, n, l, lambda, sigma, x_index, base.nu);
    csv << n << ',' << check.quadrature_nodes << ',' << format_double(check.step) << ','
        << format_double(check.value_re) << ',' << format_double(check.value_im) << ','
        << format_double(check.target) << ',' << format_double(check.error) << "\n";
    log_n.push_back(std::log(static_cast<double>(n)));
    log_err.push_back(std::log(std::max(check.error, 1e-300)));
    rows.push_back({{"n", n}, {"value_re", check.value_re}, {"error", check.error}});
  }
  json summary;
  summary["lambda"] = lambda;
  summary["sigma"] = sigma;
  summary["rows"] = rows;
  if (log_n.size() >= 2) {
    const LinearFit fit = linear_fit(log_n, log_err);
    summary["regression_exponent"] = fit.slope;
    summary["regression_se"] = fit.slope_se;
  }
  return summary;
}

}  // namespace

std::string file_checksum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("checksum: cannot open " + path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buffer[4096];
  while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(hash));
  return hex;
}

void validate_experiment(const ExperimentConfig& config) {
  if (config.ensemble_path().empty()) throw ConfigError("config: missing experiment.ensemble");
  if (!fs::exists(config.ensemble_path())) {
    throw ConfigError("config: ensemble file '" + config.ensemble_path() + "' does not exist");
  }
  const MatrixEnsemble mu = load_ensemble(config.ensemble_path());

  if (config.get_int_or("n", 1) < 1) throw ConfigError("config: params.n must be >= 1");
  if (config.get_int_or("replicas", 1) < 1) {
    throw ConfigError("config: params.replicas must be >= 1");
  }
  if (config.get_int_or("burn_in", 0) < 0) throw ConfigError("config: params.burn_in must be >= 0");
  if (config.get_int_or("m", 512) < 4) throw ConfigError("config: params.m must be >= 4");
  for (double s : config.get_list_or("s_grid", {0.0})) {
    if (s < kDefaultSRange.first || s > kDefaultSRange.second) {
      throw ConfigError("config: params.s_grid entry outside [-0.5, 2]");
    }
  }
  if (config.has("measure") && !fs::exists(config.get_string("measure"))) {
    throw ConfigError("config: params.measure file does not exist");
  }
  if (config.name() == "example1" &&
      (mu.variant() != MatrixEnsemble::Variant::kIsometryGenerators || mu.dim() != 3)) {
    throw ConfigError("config: example1 needs an isometry ensemble with d = 3");
  }
}

int run_experiment(const ExperimentConfig& config) {
  validate_experiment(config);
  const MatrixEnsemble mu = load_ensemble(config.ensemble_path());

  Outputs outputs;
  outputs.dir = config.out_dir();
  fs::create_directories(outputs.dir);

  const auto started = std::chrono::steady_clock::now();
  json summary;
  if (config.name() == "lyapunov") {
    summary = run_lyapunov(config, mu, outputs);
  } else if (config.name() == "stationary") {
    summary = run_stationary(config, mu, outputs);
  } else if (config.name() == "spectrum") {
    summary = run_spectrum(config, mu, outputs);
  } else if (config.name() == "tilt") {
    summary = run_tilt(config, mu, outputs);
  } else if (config.name() == "llt") {
    summary = run_llt(config, mu, outputs);
  } else if (config.name() == "zeroone") {
    summary = run_zeroone(config, mu, outputs);
  } else if (config.name() == "example1") {
    summary = run_example1(config, mu, outputs);
  } else if (config.name() == "fourier") {
    summary = run_fourier(config, mu, outputs);
  } else {
    throw ConfigError("unknown experiment '" + config.name() + "'");
  }
  summary["experiment"] = config.name();
  summary["seed"] = config.seed();
  write_summary(outputs, summary);

  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
          .count();
  write_manifest(config, outputs, wall_ms);
  return static_cast<int>(outputs.files.size());
}

}  // namespace projwalk::cli
