#pragma once

#include <map>
#include <string>

namespace wgf::cli {

// Flat key=value run description, merged from an optional config file and
// command-line flags (flags win). Keys not documented for the chosen
// subcommand are rejected.
struct ExperimentConfig {
  std::string subcommand;
  std::map<std::string, std::string> kv;

  bool has(const std::string& key) const { return kv.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
};

std::map<std::string, std::string> parse_config_file(const std::string& path);

// throws std::invalid_argument listing any unknown key
void validate_keys(const ExperimentConfig& cfg);

// Each runner writes its CSV artifact and returns the process exit code:
// 0 = ran and all embedded checks held, 1 = a check failed.
int run_example1(const ExperimentConfig& cfg);
int run_example2(const ExperimentConfig& cfg);
int run_pgd_cmd(const ExperimentConfig& cfg);
int run_fe_vs_fp(const ExperimentConfig& cfg);
int run_rates(const ExperimentConfig& cfg);

int dispatch(const ExperimentConfig& cfg);

}  // namespace wgf::cli
