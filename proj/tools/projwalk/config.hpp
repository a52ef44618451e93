#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace projwalk::cli {

// Parsed `key = value` sections of an experiment config file.
class ExperimentConfig {
 public:
  static ExperimentConfig from_file(const std::string& path);

  const std::string& name() const { return name_; }
  const std::string& ensemble_path() const { return ensemble_path_; }
  const std::string& out_dir() const { return out_dir_; }
  std::uint64_t seed() const { return seed_; }
  int workers() const { return workers_; }

  void override_seed(std::uint64_t seed) { seed_ = seed; }
  void override_out(const std::string& dir) { out_dir_ = dir; }
  void override_workers(int workers) { workers_ = workers; }

  bool has(const std::string& key) const;
  // Typed getters over [params]; the *_or forms supply defaults, the plain
  // forms throw ConfigError naming the key.
  std::string get_string(const std::string& key) const;
  long get_int(const std::string& key) const;
  long get_int_or(const std::string& key, long fallback) const;
  double get_double(const std::string& key) const;
  double get_double_or(const std::string& key, double fallback) const;
  std::vector<double> get_list(const std::string& key) const;
  std::vector<double> get_list_or(const std::string& key,
                                  const std::vector<double>& fallback) const;

  // Echo of every key for the manifest.
  const std::map<std::string, std::string>& raw() const { return raw_; }

  static const std::vector<std::string>& known_experiments();

 private:
  std::string name_;
  std::string ensemble_path_;
  std::string out_dir_ = ".";
  std::uint64_t seed_ = 0;
  int workers_ = 1;
  std::map<std::string, std::string> params_;
  std::map<std::string, std::string> raw_;
};

}  // namespace projwalk::cli
