#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "projwalk/errors.hpp"
#include "projwalk/serialize.hpp"

namespace projwalk::cli {

namespace {

std::string trim(const std::string& s) {
  const auto lo = s.find_first_not_of(" \t\r");
  const auto hi = s.find_last_not_of(" \t\r");
  return lo == std::string::npos ? std::string{} : s.substr(lo, hi - lo + 1);
}

double parse_checked(const std::string& key, const std::string& value) {
  try {
    return projwalk::parse_double(value, 0);
  } catch (const Error&) {
    throw ConfigError("config: params." + key + " is not a number");
  }
}

}  // namespace

const std::vector<std::string>& ExperimentConfig::known_experiments() {
  static const std::vector<std::string> names{"lyapunov", "stationary", "spectrum", "tilt",
                                              "llt",      "zeroone",    "example1", "fourier"};
  return names;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  ExperimentConfig config;
  std::string section;
  std::string raw;
  long number = 0;
  while (std::getline(in, raw)) {
    ++number;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("config line " + std::to_string(number) + ": unterminated section");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(number) + ": empty key");
    config.raw_[section.empty() ? key : section + "." + key] = value;
    if (section == "experiment") {
      if (key == "name") {
        config.name_ = value;
      } else if (key == "ensemble") {
        config.ensemble_path_ = value;
      } else if (key == "out") {
        config.out_dir_ = value;
      } else if (key == "seed") {
        config.seed_ = static_cast<std::uint64_t>(std::stoull(value));
      } else if (key == "workers") {
        config.workers_ = static_cast<int>(std::stol(value));
      } else {
        throw ConfigError("config: unknown [experiment] key '" + key + "'");
      }
    } else if (section == "params") {
      config.params_[key] = value;
    } else {
      throw ConfigError("config: unknown section '" + section + "'");
    }
  }
  if (config.name_.empty()) throw ConfigError("config: missing experiment.name");
  const auto& names = known_experiments();
  if (std::find(names.begin(), names.end(), config.name_) == names.end()) {
    throw ConfigError("config: unknown experiment name '" + config.name_ + "'");
  }
  if (config.workers_ < 1) throw ConfigError("config: experiment.workers must be >= 1");
  return config;
}

bool ExperimentConfig::has(const std::string& key) const { return params_.count(key) > 0; }

std::string ExperimentConfig::get_string(const std::string& key) const {
  const auto it = params_.find(key);
  if (it == params_.end()) throw ConfigError("config: missing params." + key);
  return it->second;
}

long ExperimentConfig::get_int(const std::string& key) const {
  try {
    return std::stol(get_string(key));
  } catch (const std::logic_error&) {
    throw ConfigError("config: params." + key + " is not an integer");
  }
}

long ExperimentConfig::get_int_or(const std::string& key, long fallback) const {
  return has(key) ? get_int(key) : fallback;
}

double ExperimentConfig::get_double(const std::string& key) const {
  return parse_checked(key, get_string(key));
}

double ExperimentConfig::get_double_or(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}

std::vector<double> ExperimentConfig::get_list(const std::string& key) const {
  std::istringstream stream(get_string(key));
  std::vector<double> out;
  std::string token;
  while (stream >> token) out.push_back(parse_checked(key, token));
  if (out.empty()) throw ConfigError("config: params." + key + " is empty");
  return out;
}

std::vector<double> ExperimentConfig::get_list_or(const std::string& key,
                                                  const std::vector<double>& fallback) const {
  return has(key) ? get_list(key) : fallback;
}

}  // namespace projwalk::cli
