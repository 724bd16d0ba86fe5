#include "commands.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mrlp/corpus.hpp"
#include "mrlp/czd.hpp"
#include "mrlp/error.hpp"
#include "mrlp/grid_io.hpp"
#include "mrlp/identities.hpp"
#include "mrlp/kvfile.hpp"
#include "mrlp/registry.hpp"
#include "mrlp/report.hpp"
#include "mrlp/sweep.hpp"
#include "mrlp/table_cache.hpp"

namespace fs = std::filesystem;

namespace mrlp::cli {

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path.string());
  return out;
}

std::string registry_dir(const ExperimentConfig& cfg) {
  return cfg.registry.empty() ? default_registry_dir() : cfg.registry;
}

TensorBanks make_banks(const ExperimentConfig& cfg) {
  std::vector<FilterBank> banks;
  for (const auto& id : cfg.filters) banks.push_back(find_bank(id, registry_dir(cfg)));
  TensorBanks tb(std::move(banks), cfg.J);
  return tb;
}

void set_jobs(int jobs) {
  if (jobs > 0) omp_set_num_threads(jobs);
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

}  // namespace

void apply_config_file(const std::string& path, ExperimentConfig& cfg) {
  const KeyValueFile kv = KeyValueFile::load(path);
  for (const auto& key : kv.keys()) {
    if (key == "filters") {
      cfg.filters = kv.get_words(key);
    } else if (key == "d") {
      cfg.d = static_cast<int>(kv.get_int(key));
    } else if (key == "J") {
      cfg.J = static_cast<int>(kv.get_int(key));
    } else if (key == "K") {
      cfg.K = static_cast<int>(kv.get_int(key));
    } else if (key == "p") {
      cfg.ps = kv.get_doubles(key);
    } else if (key == "corpus") {
      cfg.corpus = kv.get_string(key);
    } else if (key == "corpus_size") {
      cfg.corpus_size = static_cast<int>(kv.get_int(key));
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(kv.get_int(key));
    } else if (key == "seed") {
      const long long s = kv.get_int(key);
      if (s < 0) kv.fail_at(key, "seed must be non-negative");
      cfg.seed = static_cast<std::uint64_t>(s);
    } else if (key == "functions") {
      cfg.functions = static_cast<int>(kv.get_int(key));
    } else if (key == "tolerance") {
      cfg.tolerance = kv.get_double(key);
    } else if (key == "tolerance_scale") {
      cfg.tolerance_scale = kv.get_double(key);
    } else if (key == "jobs") {
      cfg.jobs = static_cast<int>(kv.get_int(key));
    } else if (key == "plot") {
      cfg.plot = kv.get_bool(key);
    } else if (key == "out") {
      cfg.out = kv.get_string(key);
    } else if (key == "registry") {
      cfg.registry = kv.get_string(key);
    } else if (key == "table.bank") {
      cfg.table_bank = kv.get_string(key);
    } else if (key == "table.which") {
      cfg.table_which = kv.get_string(key);
    } else if (key == "table.depth") {
      cfg.table_depth = static_cast<int>(kv.get_int(key));
    } else if (key == "cz.function") {
      cfg.cz_function = kv.get_string(key);
    } else if (key == "cz.J") {
      cfg.cz_J = static_cast<int>(kv.get_int(key));
    } else if (key == "cz.seeds") {
      cfg.cz_seeds = static_cast<int>(kv.get_int(key));
    } else if (key == "cz.alphas") {
      cfg.cz_alphas = kv.get_doubles(key);
    } else {
      kv.fail_at(key, "unknown key '" + key + "'");
    }
  }
}

void validate(ExperimentConfig& cfg) {
  auto bad = [](const std::string& m) { fail(ErrorKind::ConfigError, m); };
  if (cfg.filters.empty()) bad("filters: need at least one bank id");
  if (cfg.filters.size() == 1 && cfg.d > 1) cfg.filters.assign(static_cast<std::size_t>(cfg.d), cfg.filters[0]);
  if (cfg.d < 1 || cfg.d > 3) bad("d must be 1, 2 or 3 (got " + std::to_string(cfg.d) + ")");
  if (static_cast<int>(cfg.filters.size()) != cfg.d) {
    bad("filters: " + std::to_string(cfg.filters.size()) + " ids for d=" + std::to_string(cfg.d));
  }
  if (cfg.K < 0) bad("K must be non-negative");
  if (cfg.J - cfg.K < 4) {
    bad("J=" + std::to_string(cfg.J) + ", K=" + std::to_string(cfg.K) + " violates the headroom J - K >= 4");
  }
  if (cfg.J + 1 > kMaxCascadeDepth) bad("J=" + std::to_string(cfg.J) + " exceeds the table depth limit");
  if (cfg.ps.empty()) bad("p: empty list");
  for (double p : cfg.ps) {
    if (!(p > 1.0) || !std::isfinite(p)) bad("p=" + format_double(p) + " is outside (1, inf)");
  }
  if (cfg.trials < 0) bad("trials must be non-negative");
  if (cfg.corpus != "standard" && cfg.corpus != "extended") bad("corpus must be standard or extended");
  if (cfg.corpus_size < 1) bad("corpus_size must be positive");
  if (!(cfg.tolerance_scale > 0.0)) bad("tolerance_scale must be positive");
  if (cfg.tolerance < 0.0) bad("tolerance must be non-negative");
  if (cfg.jobs < 0) bad("jobs must be non-negative");
  if (cfg.cz_seeds < 1) bad("cz.seeds must be positive");
  if (cfg.cz_function != "random" && cfg.cz_function != "indicator") bad("cz.function must be random or indicator");
  for (double a : cfg.cz_alphas) {
    if (!(a > 0.0)) bad("cz.alphas must be positive");
  }
}

// ---------------------------------------------------------------------------

int cmd_filters(const ExperimentConfig& cfg) {
  const auto entries = load_registry(registry_dir(cfg));
  std::cout << entries.size() << " banks in " << registry_dir(cfg) << "\n";
  bool ok = true;
  for (const auto& e : entries) {
    const FilterBank& b = e.bank;
    std::string status = "PASS";
    std::ostringstream detail;
    try {
      b.validate();
      const double r = biorthogonality_residual(b, 12);
      detail << " biorthogonality " << sci(r);
      if (!(r <= kBankAcceptance * cfg.tolerance_scale)) status = "FAIL (biorthogonality)";
      for (Which w : {Which::primal, Which::dual}) {
        const auto table = TableCache::global().get(b, w, 12);
        const double ref = table->refinement_residual(b.mask(w));
        const double pou = table->partition_of_unity_residual();
        detail << ' ' << to_string(w) << " refinement " << sci(ref) << " unity " << sci(pou);
        if (!(ref <= 1e-12 * cfg.tolerance_scale) || !(pou <= 1e-12 * cfg.tolerance_scale)) {
          status = std::string("FAIL (") + to_string(w) + " refinement)";
        }
        if (b.self_dual()) break;
      }
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::InvalidBank && err.kind() != ErrorKind::NonSimpleEigenvalue) throw;
      status = std::string("FAIL (") + err.what() + ")";
    }
    if (status != "PASS") ok = false;
    std::cout << b.id << ' ' << status << detail.str() << "\n";
  }
  return ok ? kPass : kToleranceFailure;
}

int cmd_table(const ExperimentConfig& cfg) {
  const FilterBank bank = find_bank(cfg.table_bank, registry_dir(cfg));
  Which which;
  if (cfg.table_which == "primal") {
    which = Which::primal;
  } else if (cfg.table_which == "dual") {
    which = Which::dual;
  } else {
    fail(ErrorKind::ConfigError, "table.which must be primal or dual");
  }
  const char* env = std::getenv("MRLP_CACHE_DIR");
  TableCache cache(env && *env ? std::string(env) : (fs::path(cfg.out) / "cache").string());
  const auto table = cache.get(bank, which, cfg.table_depth);
  const double ref = table->refinement_residual(bank.mask(which));
  const double pou = table->partition_of_unity_residual();

  const fs::path path = fs::path(cfg.out) / ("table_" + bank.id + "_" + to_string(which) + "_" +
                                             std::to_string(cfg.table_depth) + ".csv");
  auto out = open_out(path);
  const bool deriv = table->derivatives().has_value();
  out << (deriv ? "x,value,derivative\r\n" : "x,value\r\n");
  const auto& v = table->values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = static_cast<double>(table->support().lo) + std::ldexp(static_cast<double>(i), -cfg.table_depth);
    out << format_double(x) << ',' << format_double(v[i]);
    if (deriv) out << ',' << format_double((*table->derivatives())[i]);
    out << "\r\n";
  }
  char sum[32];
  std::snprintf(sum, sizeof(sum), "%016llx", static_cast<unsigned long long>(table->checksum()));
  std::cout << bank.id << ' ' << to_string(which) << " depth " << cfg.table_depth << " samples " << v.size()
            << " checksum " << sum << " refinement " << sci(ref) << " unity " << sci(pou) << "\n"
            << "wrote " << path.string() << "\n";
  const bool ok = ref <= 1e-12 * cfg.tolerance_scale && pou <= 1e-12 * cfg.tolerance_scale;
  return ok ? kPass : kToleranceFailure;
}

int cmd_identities(const ExperimentConfig& cfg) {
  set_jobs(cfg.jobs);
  const TensorBanks banks = make_banks(cfg);
  IdentityOptions opt;
  opt.K = cfg.K;
  opt.algebra_tolerance = cfg.tolerance;
  opt.tolerance_scale = cfg.tolerance_scale;
  opt.seed = cfg.seed;
  opt.functions = cfg.functions;
  const auto results = run_identity_suite(banks, opt);

  std::ostringstream text;
  text << "filters " << banks.label() << " d " << cfg.d << " J " << cfg.J << " K " << cfg.K << " seed "
       << cfg.seed << "\n";
  write_identity_report(text, results);
  std::cout << text.str();
  auto out = open_out(fs::path(cfg.out) / "identities.txt");
  out << text.str();
  return all_pass(results) ? kPass : kToleranceFailure;
}

int cmd_lp_sweep(const ExperimentConfig& cfg) {
  set_jobs(cfg.jobs);
  const TensorBanks banks = make_banks(cfg);
  const auto corpus = cfg.corpus == "standard" ? standard_corpus(banks, cfg.K, cfg.seed)
                                               : extended_corpus(banks, cfg.K, cfg.corpus_size, cfg.seed);
  SweepOptions opt;
  opt.ps = cfg.ps;
  opt.K = cfg.K;
  opt.trials = cfg.trials;
  opt.seed = cfg.seed;
  opt.jobs = cfg.jobs;
  const auto records = lp_sweep(corpus, banks, opt);
  const SweepSummary summary = summarize(records, cfg.trials);

  const fs::path dir(cfg.out);
  {
    auto out = open_out(dir / "ratios.csv");
    write_ratio_csv(out, records);
  }
  {
    auto out = open_out(dir / "timings.csv");
    write_timings_csv(out, records);
  }
  {
    auto out = open_out(dir / "summary.txt");
    write_summary(out, summary);
  }
  if (cfg.plot) {
    auto out = open_out(dir / "ratios.svg");
    write_ratio_svg(out, records);
  }
  write_summary(std::cout, summary);

  // At p = 2 the ratio of a V_K member is exactly one.
  bool ok = true;
  for (const auto& r : records) {
    if (r.in_vk && r.p == 2.0 && r.status == "ok" && !(std::abs(r.ratio - 1.0) <= 1e-6 * cfg.tolerance_scale)) {
      std::cout << "FAIL p=2 ratio " << format_double(r.ratio) << " for " << r.function_id << "\n";
      ok = false;
    }
  }
  return ok ? kPass : kToleranceFailure;
}

int cmd_cz(const ExperimentConfig& cfg) {
  set_jobs(cfg.jobs);
  const fs::path dir = fs::path(cfg.out) / "cz";
  const int runs = cfg.cz_function == "indicator" ? 1 : cfg.cz_seeds;
  const auto n_alpha = cfg.cz_alphas.size();
  std::vector<std::string> lines(static_cast<std::size_t>(runs) * n_alpha);
  std::vector<char> pass(lines.size(), 0);
  std::vector<std::string> reports(lines.size());
  std::vector<std::string> cubes(lines.size());

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t job = 0; job < static_cast<std::int64_t>(lines.size()); ++job) {
    const auto seed = static_cast<std::uint64_t>(job) / n_alpha;
    const double alpha = cfg.cz_alphas[static_cast<std::size_t>(job) % n_alpha];
    const GridFunction f = cfg.cz_function == "indicator"
                               ? step_function(1, cfg.cz_J, 0.0, 1.0)
                               : random_cz_function(cfg.cz_J, cfg.seed + seed);
    std::ostringstream rep;
    std::ostringstream csv;
    char line[160];
    try {
      const CZDecomposition dec = cz_decompose(f, alpha);
      const CzReport report = verify_cz(dec, f);
      write_cz_report(rep, dec, report);
      write_cube_csv(csv, dec);
      pass[static_cast<std::size_t>(job)] = report.all_pass();
      std::snprintf(line, sizeof(line), "seed %llu alpha %g cubes %zu mes_W %.6g %s",
                    static_cast<unsigned long long>(cfg.seed + seed), alpha, dec.cubes.size(), dec.measure_w(),
                    report.all_pass() ? "PASS" : "FAIL");
    } catch (const Error& err) {
      rep << "error " << err.what() << "\n";
      std::snprintf(line, sizeof(line), "seed %llu alpha %g FAIL (%s)",
                    static_cast<unsigned long long>(cfg.seed + seed), alpha,
                    std::string(to_string(err.kind())).c_str());
    }
    lines[static_cast<std::size_t>(job)] = line;
    reports[static_cast<std::size_t>(job)] = rep.str();
    cubes[static_cast<std::size_t>(job)] = csv.str();
  }

  bool ok = true;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string stem = "run_s" + std::to_string(cfg.seed + i / n_alpha) + "_a" + std::to_string(i % n_alpha);
    open_out(dir / (stem + ".txt")) << reports[i];
    open_out(dir / (stem + ".csv")) << cubes[i];
    std::cout << lines[i] << "\n";
    ok = ok && pass[i];
  }
  return ok ? kPass : kToleranceFailure;
}

int cmd_report(const ExperimentConfig& cfg) {
  const fs::path in = cfg.input.empty() ? fs::path(cfg.out) / "ratios.csv" : fs::path(cfg.input);
  std::ifstream file(in, std::ios::binary);
  if (!file) fail(ErrorKind::IoError, "cannot read " + in.string());
  const auto records = read_ratio_csv(file);
  bool signs = false;
  for (const auto& r : records) signs = signs || r.sign_max != 0.0;
  const SweepSummary summary = summarize(records, signs ? cfg.trials : 0);
  const fs::path dir(cfg.out);
  {
    auto out = open_out(dir / "summary.txt");
    write_summary(out, summary);
  }
  if (cfg.plot) {
    auto out = open_out(dir / "ratios.svg");
    write_ratio_svg(out, records);
  }
  write_summary(std::cout, summary);
  return kPass;
}

}  // namespace mrlp::cli
