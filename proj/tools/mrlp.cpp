// Command-line driver. Exit codes: 0 all checks pass, 1 a tolerance check
// failed, 2 configuration or I/O error.

#include <CLI11.hpp>

#include <iostream>

#include "commands.hpp"
#include "mrlp/error.hpp"

using mrlp::cli::ExperimentConfig;

int main(int argc, char** argv) {
  CLI::App app{"Multiresolution projections, square functions and Calderon-Zygmund checks"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  int jobs = -1;
  long long seed = -1;
  bool no_plot = false;
  double tolerance_scale = 0.0;
  std::string registry;
  app.add_option("--config", config_path, "key = value experiment file")->check(CLI::ExistingFile);
  app.add_option("--out", out, "output directory");
  app.add_option("--jobs", jobs, "thread bound (0: OpenMP default)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", seed, "base seed")->check(CLI::NonNegativeNumber);
  app.add_flag("--no-plot", no_plot, "skip SVG output");
  app.add_option("--tolerance-scale", tolerance_scale, "multiply every tolerance")->check(CLI::PositiveNumber);
  app.add_option("--registry", registry, "filter bank directory");

  auto* filters = app.add_subcommand("filters", "validate every bank in the registry");
  auto* table = app.add_subcommand("table", "cascade one table and write it as CSV");
  std::string t_bank;
  std::string t_which;
  int t_depth = 0;
  table->add_option("--bank", t_bank, "bank id");
  table->add_option("--which", t_which, "primal or dual");
  table->add_option("--depth", t_depth, "dyadic depth");
  auto* identities = app.add_subcommand("identities", "projector and tensor identity suite");
  auto* sweep = app.add_subcommand("lp-sweep", "square-function and sign-operator ratios");
  auto* cz = app.add_subcommand("cz", "Calderon-Zygmund decompositions");
  auto* report = app.add_subcommand("report", "summary and plot from an existing ratios.csv");
  std::string input;
  report->add_option("--input", input, "ratios.csv (default: <out>/ratios.csv)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : mrlp::cli::kConfigError;
  }

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) mrlp::cli::apply_config_file(config_path, cfg);
    // Flags win over the file.
    if (!out.empty()) cfg.out = out;
    if (jobs >= 0) cfg.jobs = jobs;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (no_plot) cfg.plot = false;
    if (tolerance_scale > 0.0) cfg.tolerance_scale = tolerance_scale;
    if (!registry.empty()) cfg.registry = registry;
    if (!t_bank.empty()) cfg.table_bank = t_bank;
    if (!t_which.empty()) cfg.table_which = t_which;
    if (t_depth > 0) cfg.table_depth = t_depth;
    if (!input.empty()) cfg.input = input;
    mrlp::cli::validate(cfg);

    if (*filters) return mrlp::cli::cmd_filters(cfg);
    if (*table) return mrlp::cli::cmd_table(cfg);
    if (*identities) return mrlp::cli::cmd_identities(cfg);
    if (*sweep) return mrlp::cli::cmd_lp_sweep(cfg);
    if (*cz) return mrlp::cli::cmd_cz(cfg);
    if (*report) return mrlp::cli::cmd_report(cfg);
  } catch (const mrlp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mrlp::cli::kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mrlp::cli::kConfigError;
  }
  return mrlp::cli::kConfigError;
}
