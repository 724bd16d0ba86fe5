#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mrlp::cli {

enum ExitCode : int { kPass = 0, kToleranceFailure = 1, kConfigError = 2 };

/// Everything a command may read. Values come from the config file first and
/// are then overridden by flags.
struct ExperimentConfig {
  std::vector<std::string> filters{"db4"};
  int d = 1;
  int J = 10;
  int K = 4;
  std::vector<double> ps{1.25, 1.5, 2.0, 4.0};
  std::string corpus = "standard";  // standard | extended
  int corpus_size = 20;
  int trials = 20;
  std::uint64_t seed = 1;
  int functions = 6;  // identity suite corpus size
  double tolerance = 0.0;  // identity algebra tolerance; 0 = default
  double tolerance_scale = 1.0;
  int jobs = 0;
  bool plot = true;
  std::string out = "out";
  std::string registry;
  std::string input;  // report: ratios.csv to read

  // table
  std::string table_bank = "db4";
  std::string table_which = "primal";
  int table_depth = 12;

  // cz
  std::string cz_function = "random";  // random | indicator
  int cz_J = 12;
  int cz_seeds = 20;
  std::vector<double> cz_alphas{0.25, 0.5, 1.0, 2.0, 4.0};
};

/// Reads `key = value` lines; unknown keys are a ConfigError.
void apply_config_file(const std::string& path, ExperimentConfig& cfg);
/// Enforces d in {1,2,3}, J - K >= 4, p in (1, inf) and a consistent filter
/// list; throws ConfigError.
void validate(ExperimentConfig& cfg);

int cmd_filters(const ExperimentConfig& cfg);
int cmd_table(const ExperimentConfig& cfg);
int cmd_identities(const ExperimentConfig& cfg);
int cmd_lp_sweep(const ExperimentConfig& cfg);
int cmd_cz(const ExperimentConfig& cfg);
int cmd_report(const ExperimentConfig& cfg);

}  // namespace mrlp::cli
