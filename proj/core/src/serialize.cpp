#include "projwalk/serialize.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "projwalk/errors.hpp"

namespace projwalk {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_double(const std::string& token, long line_number) {
  double value = 0.0;
  const char* begin = token.data();
  const char* end = begin + token.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc{} || result.ptr != end) {
    throw FormatError("malformed number '" + token + "'", line_number);
  }
  return value;
}

namespace {

struct Line {
  std::string key;
  std::string value;
  long number = 0;
};

// key = value lines; '#' starts a comment; blank lines skipped.
std::vector<Line> read_key_value_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::vector<Line> lines;
  std::string raw;
  long number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const auto eq = raw.find('=');
    if (eq == std::string::npos) {
      if (raw.find_first_not_of(" \t\r") != std::string::npos) {
        throw FormatError("expected 'key = value'", number);
      }
      continue;
    }
    auto trim = [](std::string s) {
      const auto lo = s.find_first_not_of(" \t\r");
      const auto hi = s.find_last_not_of(" \t\r");
      return lo == std::string::npos ? std::string{} : s.substr(lo, hi - lo + 1);
    };
    Line line;
    line.key = trim(raw.substr(0, eq));
    line.value = trim(raw.substr(eq + 1));
    line.number = number;
    if (line.key.empty()) throw FormatError("empty key", number);
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::string> split_tokens(const std::string& value) {
  std::vector<std::string> tokens;
  std::istringstream stream(value);
  std::string tok;
  while (stream >> tok) tokens.push_back(tok);
  return tokens;
}

Eigen::MatrixXd parse_matrix_tokens(const std::vector<std::string>& tokens, int d, long number) {
  if (static_cast<int>(tokens.size()) != d * d) {
    throw FormatError("matrix needs " + std::to_string(d * d) + " entries, got " +
                          std::to_string(tokens.size()),
                      number);
  }
  Eigen::MatrixXd m(d, d);
  for (int r = 0; r < d; ++r) {
    for (int c = 0; c < d; ++c) {
      m(r, c) = parse_double(tokens[static_cast<std::size_t>(r * d + c)], number);
    }
  }
  return m;
}

}  // namespace

MatrixEnsemble load_ensemble(const std::string& path) {
  const auto lines = read_key_value_file(path);
  int d = 0;
  int p = 0;
  std::string variant;
  std::vector<Matrix> support;
  std::vector<double> probs;
  long last_matrix_line = 0;

  for (const Line& line : lines) {
    if (line.key == "d") {
      d = static_cast<int>(parse_double(line.value, line.number));
      if (d < 2) throw FormatError("d must be >= 2", line.number);
    } else if (line.key == "variant") {
      variant = line.value;
      if (variant != "finite_support" && variant != "isometry_generators") {
        throw FormatError("unknown variant '" + variant + "'", line.number);
      }
    } else if (line.key == "p") {
      p = static_cast<int>(parse_double(line.value, line.number));
    } else if (line.key == "matrix") {
      if (d == 0) throw FormatError("matrix before d", line.number);
      support.emplace_back(parse_matrix_tokens(split_tokens(line.value), d, line.number));
      last_matrix_line = line.number;
    } else if (line.key == "generator") {
      if (d == 0) throw FormatError("generator before d", line.number);
      const auto tokens = split_tokens(line.value);
      if (tokens.empty()) throw FormatError("empty generator", line.number);
      if (tokens[0] == "rotation" || tokens[0] == "boost") {
        if (tokens.size() != 4) {
          throw FormatError("generator needs: rotation|boost <i> <j> <value>", line.number);
        }
        const int i = static_cast<int>(parse_double(tokens[1], line.number)) - 1;
        const int j = static_cast<int>(parse_double(tokens[2], line.number)) - 1;
        const double a = parse_double(tokens[3], line.number);
        if (i < 0 || j < 0 || i >= d || j >= d || i == j) {
          throw FormatError("generator coordinates out of range", line.number);
        }
        Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
        if (tokens[0] == "rotation") {
          m(i, i) = std::cos(a);
          m(j, j) = std::cos(a);
          m(i, j) = -std::sin(a);
          m(j, i) = std::sin(a);
        } else {
          m(i, i) = std::cosh(a);
          m(j, j) = std::cosh(a);
          m(i, j) = std::sinh(a);
          m(j, i) = std::sinh(a);
        }
        support.emplace_back(std::move(m));
      } else if (tokens[0] == "matrix") {
        support.emplace_back(parse_matrix_tokens(
            std::vector<std::string>(tokens.begin() + 1, tokens.end()), d, line.number));
      } else {
        throw FormatError("unknown generator kind '" + tokens[0] + "'", line.number);
      }
      last_matrix_line = line.number;
    } else if (line.key == "prob") {
      probs.push_back(parse_double(line.value, line.number));
      last_matrix_line = line.number;
    } else {
      throw FormatError("unknown key '" + line.key + "'", line.number);
    }
  }
  if (variant.empty()) throw FormatError("missing variant", last_matrix_line);
  if (support.size() != probs.size()) {
    throw FormatError("each matrix/generator needs exactly one prob (" +
                          std::to_string(support.size()) + " vs " + std::to_string(probs.size()) +
                          ")",
                      last_matrix_line);
  }
  try {
    if (variant == "finite_support") {
      return MatrixEnsemble::finite_support(std::move(support), std::move(probs));
    }
    return MatrixEnsemble::isometry(p, std::move(support), std::move(probs));
  } catch (const Error& e) {
    throw FormatError(std::string("invalid ensemble: ") + e.what(), last_matrix_line);
  }
}

void save_ensemble(const std::string& path, const MatrixEnsemble& ensemble) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << "d = " << ensemble.dim() << "\n";
  out << "variant = "
      << (ensemble.variant() == MatrixEnsemble::Variant::kFiniteSupport ? "finite_support"
                                                                        : "isometry_generators")
      << "\n";
  if (ensemble.variant() == MatrixEnsemble::Variant::kIsometryGenerators) {
    out << "p = " << ensemble.signature_p() << "\n";
  }
  for (std::size_t i = 0; i < ensemble.size(); ++i) {
    out << "matrix =";
    const Eigen::MatrixXd& m = ensemble.matrix(i).mat();
    for (int r = 0; r < ensemble.dim(); ++r) {
      for (int c = 0; c < ensemble.dim(); ++c) out << ' ' << format_double(m(r, c));
    }
    out << "\n";
    out << "prob = " << format_double(ensemble.prob(i)) << "\n";
  }
}

EmpiricalMeasure load_measure(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::string header;
  long number = 0;
  if (!std::getline(in, header)) throw FormatError("empty file", 1);
  ++number;
  if (header != "projwalk measure v1") throw FormatError("bad header '" + header + "'", 1);

  int d = 0;
  std::size_t count = 0;
  std::string raw;
  EmpiricalMeasure measure;
  while (std::getline(in, raw)) {
    ++number;
    if (raw.empty() || raw[0] == '#') continue;
    std::istringstream stream(raw);
    std::string key;
    stream >> key;
    if (key == "d") {
      stream >> d;
      if (d < 2) throw FormatError("d must be >= 2", number);
    } else if (key == "count") {
      stream >> count;
      measure.points.reserve(count);
      measure.weights.reserve(count);
    } else {
      if (d == 0) throw FormatError("point before d", number);
      // key already holds the first coordinate token
      std::vector<std::string> tokens{key};
      std::string tok;
      while (stream >> tok) tokens.push_back(tok);
      if (static_cast<int>(tokens.size()) != d + 1) {
        throw FormatError("point line needs d coords + weight", number);
      }
      Vec v(d);
      for (int i = 0; i < d; ++i) v[i] = parse_double(tokens[static_cast<std::size_t>(i)], number);
      try {
        measure.points.push_back(project(v));
      } catch (const Error& e) {
        throw FormatError(std::string("bad point: ") + e.what(), number);
      }
      measure.weights.push_back(parse_double(tokens.back(), number));
    }
  }
  if (count != 0 && count != measure.points.size()) {
    throw FormatError("count says " + std::to_string(count) + " points but file has " +
                          std::to_string(measure.points.size()),
                      number);
  }
  if (measure.points.empty()) throw FormatError("no points", number);
  double sum = 0.0;
  for (double w : measure.weights) sum += w;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw FormatError("weights sum to " + format_double(sum) + ", expected 1 within 1e-9", number);
  }
  return measure;
}

void save_measure(const std::string& path, const EmpiricalMeasure& measure) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << "projwalk measure v1\n";
  out << "d " << measure.dim() << "\n";
  out << "count " << measure.size() << "\n";
  for (std::size_t i = 0; i < measure.size(); ++i) {
    const Vec& v = measure.points[i].rep();
    for (int k = 0; k < measure.dim(); ++k) out << format_double(v[k]) << ' ';
    out << format_double(measure.weights[i]) << "\n";
  }
}

namespace {

void write_vector(std::ofstream& out, const std::string& key, const Eigen::VectorXd& v) {
  out << key << " =";
  for (Eigen::Index i = 0; i < v.size(); ++i) out << ' ' << format_double(v[i]);
  out << "\n";
}

Eigen::VectorXd read_vector(const Line& line, int expected) {
  const auto tokens = split_tokens(line.value);
  if (static_cast<int>(tokens.size()) != expected) {
    throw FormatError("array needs " + std::to_string(expected) + " entries", line.number);
  }
  Eigen::VectorXd v(expected);
  for (int i = 0; i < expected; ++i) {
    v[i] = parse_double(tokens[static_cast<std::size_t>(i)], line.number);
  }
  return v;
}

}  // namespace

void save_spectral(const std::string& path, const SpectralResult& spec) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write '" + path + "'");
  out << "projwalk spectral v1\n";
  out << "d = " << spec.grid->dim() << "\n";
  out << "m = " << spec.grid->size() << "\n";
  if (spec.grid->is_circle()) {
    out << "offset = " << format_double(spec.grid->offset()) << "\n";
    out << "dual_offset = " << format_double(spec.dual_grid->offset()) << "\n";
  } else {
    out << "grid_seed = " << spec.grid->seed() << "\n";
    out << "dual_grid_seed = " << spec.dual_grid->seed() << "\n";
  }
  out << "s = " << format_double(spec.s) << "\n";
  out << "kappa = " << format_double(spec.kappa) << "\n";
  out << "gap = " << format_double(spec.gap) << "\n";
  out << "dual_kappa = " << format_double(spec.dual_kappa) << "\n";
  out << "dual_gap = " << format_double(spec.dual_gap) << "\n";
  write_vector(out, "r", spec.r);
  write_vector(out, "nu", spec.nu);
  write_vector(out, "dual_r", spec.dual_r);
  write_vector(out, "dual_nu", spec.dual_nu);
}

SpectralResult load_spectral(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::string header;
  if (!std::getline(in, header)) throw FormatError("empty file", 1);
  if (header != "projwalk spectral v1") throw FormatError("bad header '" + header + "'", 1);

  SpectralResult spec;
  int d = 0;
  int m = 0;
  double offset = 0.0;
  double dual_offset = 0.0;
  std::uint64_t grid_seed = 0x9e3779b9;
  std::uint64_t dual_grid_seed = 0x517cc1b7;
  std::string raw;
  long number = 1;
  std::vector<Line> lines;
  while (std::getline(in, raw)) {
    ++number;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto lo = s.find_first_not_of(" \t\r");
      const auto hi = s.find_last_not_of(" \t\r");
      return lo == std::string::npos ? std::string{} : s.substr(lo, hi - lo + 1);
    };
    lines.push_back(Line{trim(raw.substr(0, eq)), trim(raw.substr(eq + 1)), number});
  }
  for (const Line& line : lines) {
    if (line.key == "d") d = static_cast<int>(parse_double(line.value, line.number));
    if (line.key == "m") m = static_cast<int>(parse_double(line.value, line.number));
    if (line.key == "offset") offset = parse_double(line.value, line.number);
    if (line.key == "dual_offset") dual_offset = parse_double(line.value, line.number);
    if (line.key == "grid_seed") {
      grid_seed = static_cast<std::uint64_t>(parse_double(line.value, line.number));
    }
    if (line.key == "dual_grid_seed") {
      dual_grid_seed = static_cast<std::uint64_t>(parse_double(line.value, line.number));
    }
  }
  if (d < 2 || m < 4) throw FormatError("missing or bad grid spec", 1);
  spec.grid = std::make_shared<ProjGrid>(d == 2 ? ProjGrid::circle(m, offset)
                                                : ProjGrid::sphere(d, m, grid_seed));
  spec.dual_grid = std::make_shared<ProjGrid>(d == 2 ? ProjGrid::circle(m, dual_offset)
                                                     : ProjGrid::sphere(d, m, dual_grid_seed));
  for (const Line& line : lines) {
    if (line.key == "s") spec.s = parse_double(line.value, line.number);
    else if (line.key == "kappa") spec.kappa = parse_double(line.value, line.number);
    else if (line.key == "gap") spec.gap = parse_double(line.value, line.number);
    else if (line.key == "dual_kappa") spec.dual_kappa = parse_double(line.value, line.number);
    else if (line.key == "dual_gap") spec.dual_gap = parse_double(line.value, line.number);
    else if (line.key == "r") spec.r = read_vector(line, m);
    else if (line.key == "nu") spec.nu = read_vector(line, m);
    else if (line.key == "dual_r") spec.dual_r = read_vector(line, m);
    else if (line.key == "dual_nu") spec.dual_nu = read_vector(line, m);
  }
  if (spec.r.size() != m || spec.nu.size() != m || spec.dual_r.size() != m ||
      spec.dual_nu.size() != m) {
    throw FormatError("missing eigen arrays", 1);
  }
  return spec;
}

}  // namespace projwalk
