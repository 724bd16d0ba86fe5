// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all
// pass. Tolerances and sizes are pinned here.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mrlp/corpus.hpp"
#include "mrlp/czd.hpp"
#include "mrlp/identities.hpp"
#include "mrlp/lpharness.hpp"
#include "mrlp/mrand.hpp"
#include "mrlp/registry.hpp"
#include "mrlp/report.hpp"
#include "mrlp/sweep.hpp"
#include "mrlp/table_cache.hpp"

using namespace mrlp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string sci(double v) {
  char b[32];
  std::snprintf(b, sizeof(b), "%.2e", v);
  return b;
}

double l2(const GridFunction& f) { return lp_norm(f, 2.0); }

double pnorm(const GridFunction& f, double p) { return p == 2.0 ? l2(f) : lp_norm(f, p); }

// ---------------------------------------------------------------------------

Outcome ac1_biorthogonality() {
  Outcome o;
  for (const char* id : {"haar", "db2", "db3", "db4"}) {
    const double r = biorthogonality_residual(find_bank(id), 12);
    o.require(r <= 1e-6, std::string(id) + " residual " + sci(r));
    o.note(std::string(id) + " " + sci(r));
  }
  return o;
}

Outcome ac2_projector_algebra() {
  Outcome o;
  struct Case {
    const char* id;
    int J;
    double tol;
  };
  for (const Case c : {Case{"haar", 12, 1e-8}, Case{"db4", 14, 1e-6}}) {
    const TensorBanks banks(find_bank(c.id), 1, c.J);
    IdentityOptions opt;
    opt.K = 6;
    opt.functions = 10;
    opt.seed = 11;
    opt.algebra_tolerance = c.tol;
    double worst = 0.0;
    for (const auto& r : run_identity_suite(banks, opt)) {
      o.require(r.pass, std::string(c.id) + " " + r.name + " " + sci(r.residual));
      worst = std::max(worst, r.residual);
    }
    o.note(std::string(c.id) + " worst " + sci(worst));
  }
  return o;
}

Outcome ac3_parseval() {
  Outcome o;
  struct Case {
    std::vector<const char*> ids;
    int K;
  };
  const int J = 11;
  for (const Case& c : {Case{{"haar"}, 7}, Case{{"db4"}, 2}, Case{{"haar", "haar"}, 5}}) {
    std::vector<FilterBank> b;
    for (const char* id : c.ids) b.push_back(find_bank(id));
    const TensorBanks banks(b, J);
    const int d = banks.dim();
    for (std::uint64_t seed : {5u, 6u, 7u}) {
      const GridFunction f = random_vk(banks, c.K, d == 1 ? 24 : 8, seed);
      const double n2 = std::pow(l2(f), 2);
      double energy = 0.0;
      for_each_block(f, MultiIndex(d, c.K), banks,
                     [&](const MultiIndex&, const GridFunction& blk) { energy += std::pow(l2(blk), 2); });
      const double pars = std::abs(n2 - energy) / n2;
      const double rec = l2(difference(partial_sum(f, MultiIndex(d, c.K), banks), f)) / std::sqrt(n2);
      o.require(pars <= 1e-8, banks.label() + " parseval " + sci(pars));
      o.require(rec <= 1e-8, banks.label() + " reconstruction " + sci(rec));
      if (seed == 5) o.note(banks.label() + " " + sci(pars) + "/" + sci(rec));
    }
  }
  return o;
}

/// E_kappa f straight from the definition: coefficients by a double sum over
/// the input cells, then the double sum over shifts, with phi and phi*
/// evaluated from cascaded tables.
GridFunction brute_force_projection(const GridFunction& f, const MultiIndex& kappa, const TensorBanks& banks,
                                    const Box& out_box) {
  const int J = f.depth();
  const double h = f.step();
  std::vector<std::shared_ptr<const DyadicTable>> prim;
  std::vector<std::shared_ptr<const DyadicTable>> dual;
  for (int j = 0; j < 2; ++j) {
    prim.push_back(TableCache::global().get(banks.axis(j)->bank(), Which::primal, J + 1));
    dual.push_back(TableCache::global().get(banks.axis(j)->bank(), Which::dual, J + 1));
  }
  // phi(2^k x - nu) at the midpoint of cell n: the argument is
  // (2n + 1 - nu 2^(J+1-k)) 2^-(J+1-k).
  auto eval = [&](const DyadicTable& t, int k, std::int64_t n, std::int64_t nu) {
    const int s = J + 1 - k;
    return t.value_at_dyadic(2 * n + 1 - (nu << s), s);
  };
  std::vector<std::int64_t> lo(2);
  std::vector<std::int64_t> hi(2);
  for (int j = 0; j < 2; ++j) {
    const auto& bank = banks.axis(j)->bank();
    const int k = static_cast<int>(kappa[j]);
    const Interval in = f.box().axis_interval(j);
    // Every nu whose dual support can meet the input, generously.
    lo[static_cast<std::size_t>(j)] = (in.lo >> (J - k)) - bank.dual_support.hi - 1;
    hi[static_cast<std::size_t>(j)] = (in.hi() >> (J - k)) - bank.dual_support.lo + 1;
  }
  GridFunction out = GridFunction::zeros(J, out_box);
  const double scale = std::ldexp(1.0, static_cast<int>(kappa[0] + kappa[1]));
  const int k0 = static_cast<int>(kappa[0]);
  const int k1 = static_cast<int>(kappa[1]);
  for (std::int64_t a = lo[0]; a <= hi[0]; ++a) {
    for (std::int64_t b = lo[1]; b <= hi[1]; ++b) {
      Complex c = 0.0;
      for (std::int64_t x = 0; x < f.box().extent(0); ++x) {
        for (std::int64_t y = 0; y < f.box().extent(1); ++y) {
          const std::int64_t n0 = f.box().origin()[0] + x;
          const std::int64_t n1 = f.box().origin()[1] + y;
          c += f.at(MultiIndex{n0, n1}) * eval(*dual[0], k0, n0, a) * eval(*dual[1], k1, n1, b);
        }
      }
      c *= scale * h * h;
      if (c == Complex{}) continue;
      auto v = out.values();
      for (std::int64_t x = 0; x < out_box.extent(0); ++x) {
        for (std::int64_t y = 0; y < out_box.extent(1); ++y) {
          const std::int64_t n0 = out_box.origin()[0] + x;
          const std::int64_t n1 = out_box.origin()[1] + y;
          v[static_cast<std::size_t>(x * out_box.extent(1) + y)] +=
              c * eval(*prim[0], k0, n0, a) * eval(*prim[1], k1, n1, b);
        }
      }
    }
  }
  return out;
}

Outcome ac4_tensor_equivalences() {
  Outcome o;
  const TensorBanks banks({find_bank("db2"), find_bank("db3")}, 8);
  const auto corpus = identity_corpus(banks, 3, 5, 21);
  double ie = 0.0;
  double comm = 0.0;
  for (const auto& e : corpus) {
    const double nf = l2(e.f);
    for (const auto& kappa : box_indices(MultiIndex{3, 3})) {
      ie = std::max(ie, l2(difference(mixed_detail_inclusion_exclusion(e.f, kappa, banks),
                                      mixed_detail(e.f, kappa, banks))) / nf);
    }
    for (int a : {0, 2, 3}) {
      for (int b : {0, 1, 3}) {
        const auto S = LevelCombination::projector(banks.axis(0), a);
        const auto T = LevelCombination::projector(banks.axis(1), b);
        const auto st = kernels::apply_lines(kernels::apply_lines(e.f, 1, T, banks.exec), 0, S, banks.exec);
        const auto ts = kernels::apply_lines(kernels::apply_lines(e.f, 0, S, banks.exec), 1, T, banks.exec);
        comm = std::max(comm, l2(difference(st, ts)) / nf);
      }
    }
  }
  o.require(ie <= 1e-9, "inclusion-exclusion " + sci(ie));
  o.require(comm <= 1e-10, "commutation " + sci(comm));

  // 8x8 cells of random data at depth 6.
  const TensorBanks small({find_bank("db2"), find_bank("db3")}, 6);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g(0.0, 1.0);
  GridFunction f = GridFunction::zeros(6, Box(MultiIndex{3, -5}, {8, 8, 0}));
  // Noise around a constant, so coarse projections keep a sizeable share.
  for (auto& z : f.values()) z = 1.0 + 0.5 * g(rng);
  double brute = 0.0;
  double kept = INFINITY;
  for (const MultiIndex kappa : {MultiIndex{0, 0}, MultiIndex{1, 2}, MultiIndex{2, 1}}) {
    const GridFunction fast = project_nd(f, kappa, small);
    const GridFunction slow = brute_force_projection(f, kappa, small, fast.box());
    kept = std::min(kept, l2(fast) / l2(f));
    o.require(l2(fast) > 0.05 * l2(f), "projection of the 8x8 data vanished");
    brute = std::max(brute, l2(difference(fast, slow)) / l2(fast));
  }
  o.require(brute <= 1e-8, "brute-force double sum " + sci(brute));
  o.note("IE " + sci(ie) + " comm " + sci(comm) + " brute " + sci(brute) + " kept " + sci(kept));
  return o;
}

Outcome ac5_convergence() {
  Outcome o;
  struct Case {
    int d;
    int J;
    int K;
  };
  for (const Case c : {Case{1, 14, 8}, Case{2, 8, 4}}) {
    const TensorBanks banks(find_bank("db4"), c.d, c.J);
    const GridFunction f = GridFunction::sample(c.J, centered_box(c.d, c.J, 0), [&](const auto& x) {
      double v = 1.0;
      for (int j = 0; j < c.d; ++j) {
        const double u = 1.0 - x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)] / 0.81;
        v *= u > 0.0 ? u * u : 0.0;
      }
      return v;
    }, "C1 bump");
    const std::vector<double> ps{1.5, 2.0, 4.0};
    // err[k][i]: relative L_p error of E_{k e} f for ps[i].
    std::vector<std::vector<double>> err;
    for (int k = 0; k <= c.K; ++k) {
      const GridFunction tail = difference(f, project_nd(f, MultiIndex(c.d, k), banks));
      std::vector<double> row;
      for (double p : ps) row.push_back(pnorm(tail, p) / pnorm(f, p));
      err.push_back(row);
    }
    for (std::size_t i = 0; i < ps.size(); ++i) {
      bool monotone = true;
      for (int k = 1; k <= c.K; ++k) monotone = monotone && err[k][i] < err[k - 1][i];
      const double last = err[static_cast<std::size_t>(c.K)][i];
      const std::string tag = "d=" + std::to_string(c.d) + " p=" + sci(ps[i]);
      o.require(monotone, tag + " not strictly decreasing");
      o.require(last <= 5e-3, tag + " final " + sci(last));
      if (ps[i] == 2.0) o.note("d=" + std::to_string(c.d) + " final L2 " + sci(last));
    }
  }
  return o;
}

Outcome ac6_p2_identity() {
  Outcome o;
  struct Case {
    const char* id;
    int d;
    int J;
    int K;
  };
  for (const Case c : {Case{"haar", 1, 11, 6}, Case{"haar", 2, 9, 4}, Case{"db4", 1, 13, 4}}) {
    const TensorBanks banks(find_bank(c.id), c.d, c.J);
    for (std::uint64_t seed : {31u, 32u}) {
      const GridFunction f = random_vk(banks, c.K, c.d == 1 ? 16 : 6, seed);
      const double r = std::abs(l2(square_function(f, c.K, banks)) / l2(f) - 1.0);
      o.require(r <= 1e-8, banks.label() + " " + sci(r));
      if (seed == 31) o.note(banks.label() + " " + sci(r));
    }
  }
  return o;
}

Outcome ac7_sign_uniformity() {
  Outcome o;
  const int J = 14;
  const TensorBanks banks(find_bank("db4"), 1, J);
  const int trials = 100;
  std::vector<double> max_ratio;
  double p2 = 0.0;
  double inv = 0.0;
  for (int K : {4, 6}) {
    const auto corpus = extended_corpus(banks, 4, 20, 77);
    double m15 = 0.0;
    double m4 = 0.0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const GridFunction& f = corpus[i].f;
      const BlockSet blocks = BlockSet::build(f, K, banks);
      const GridFunction ek = blocks.combine(J, [](const MultiIndex&) { return 1.0; });
      const double n15 = lp_norm(f, 1.5);
      const double n2 = l2(f);
      const double n4 = lp_norm(f, 4.0);
      const double ek_ratio = l2(ek) / n2;
      for (int t = 0; t < trials; ++t) {
        const SignPattern sigma = SignPattern::random(1, K, 1000 * i + static_cast<std::uint64_t>(t));
        const GridFunction ts = blocks.combine(J, [&](const MultiIndex& kappa) { return double(sigma.sign(kappa)); });
        m15 = std::max(m15, lp_norm(ts, 1.5) / n15);
        m4 = std::max(m4, lp_norm(ts, 4.0) / n4);
        p2 = std::max(p2, std::abs(l2(ts) / n2 - ek_ratio));
        if (K == 6 && t < 5) {
          const GridFunction once = sign_operator(f, sigma, banks);
          const GridFunction twice = sign_operator(once, sigma, banks);
          inv = std::max(inv, l2(difference(twice, ek)) / n2);
        }
      }
    }
    max_ratio.push_back(m15);
    max_ratio.push_back(m4);
  }
  const double c15 = std::abs(max_ratio[2] - max_ratio[0]) / max_ratio[0];
  const double c4 = std::abs(max_ratio[3] - max_ratio[1]) / max_ratio[1];
  o.require(c15 <= 0.2, "p=1.5 change " + sci(c15));
  o.require(c4 <= 0.2, "p=4 change " + sci(c4));
  o.require(p2 <= 1e-6, "p=2 deviation " + sci(p2));
  o.require(inv <= 1e-8, "involution " + sci(inv));
  o.note("max p=1.5 " + sci(max_ratio[0]) + "->" + sci(max_ratio[2]) + ", p=4 " + sci(max_ratio[1]) + "->" +
         sci(max_ratio[3]) + ", p=2 " + sci(p2) + ", inv " + sci(inv));
  return o;
}

std::string sweep_csv(const TensorBanks& banks, int K, int threads, SweepSummary* summary) {
  omp_set_num_threads(threads);
  SweepOptions opt;
  opt.K = K;
  opt.seed = 1;
  opt.trials = 20;
  const auto records = lp_sweep(standard_corpus(banks, K, 1), banks, opt);
  if (summary) *summary = summarize(records, opt.trials);
  std::ostringstream s;
  write_ratio_csv(s, records);
  return s.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome ac8_ratio_stability() {
  Outcome o;
  struct Case {
    std::vector<const char*> ids;
    int J;
    int K;
    const char* golden;
  };
  const int threads = omp_get_max_threads();
  for (const Case& c : {Case{{"db4"}, 10, 4, "ratios.csv"}, Case{{"haar", "haar"}, 7, 3, "ratios_2d.csv"}}) {
    std::vector<FilterBank> b;
    for (const char* id : c.ids) b.push_back(find_bank(id));
    SweepSummary coarse;
    SweepSummary fine;
    const std::string csv = sweep_csv(TensorBanks(b, c.J), c.K, threads, &coarse);
    sweep_csv(TensorBanks(b, c.J + 1), c.K, threads, &fine);
    const std::string again = sweep_csv(TensorBanks(b, c.J), c.K, 3, nullptr);
    omp_set_num_threads(threads);
    const std::string label = TensorBanks(b, c.J).label();
    o.require(csv == again, label + " CSV differs between thread counts");
    o.require(csv == read_file(std::string(MRLP_GOLDEN_DIR) + "/" + c.golden), label + " differs from golden");
    double shift = 0.0;
    for (std::size_t i = 0; i < coarse.per_p.size(); ++i) {
      const auto& a = coarse.per_p[i];
      const auto& z = fine.per_p[i];
      o.require(a.ratio_min > 0.0 && z.ratio_min > 0.0, label + " window not positive");
      shift = std::max({shift, std::abs(z.ratio_min - a.ratio_min) / a.ratio_min,
                        std::abs(z.ratio_max - a.ratio_max) / a.ratio_max});
    }
    o.require(shift <= 0.1, label + " window shift " + sci(shift));
    o.note(label + " shift " + sci(shift));
  }
  return o;
}

Outcome ac9_khintchine() {
  Outcome o;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst = 0.0;
  for (int n = 1; n <= 12; ++n) {
    RademacherFamily fam{MultiIndex{n - 1}, {}};
    for (int i = 0; i < n; ++i) fam.a.push_back(g(rng));
    double s2 = 0.0;
    double s4 = 0.0;
    for (double a : fam.a) {
      s2 += a * a;
      s4 += a * a * a * a;
    }
    const double closed = 3.0 * s2 * s2 - 2.0 * s4;
    const auto r = khintchine_exact(fam, 4.0);
    worst = std::max(worst, std::abs(r.moment - closed) / closed);
    o.require(r.lower_ok && r.upper_ok, "bounds n=" + std::to_string(n));
  }
  o.require(worst <= 1e-12, "exact p=4 moment " + sci(worst));

  RademacherFamily big{MultiIndex{19}, {}};
  for (int i = 0; i < 20; ++i) big.a.push_back(g(rng));
  double s2 = 0.0;
  double s4 = 0.0;
  for (double a : big.a) {
    s2 += a * a;
    s4 += a * a * a * a;
  }
  const double closed = 3.0 * s2 * s2 - 2.0 * s4;
  const auto mc = khintchine_check(big, 4.0, 200000, 3);
  const double z = std::abs(mc.moment - closed) / mc.std_error;
  o.require(!mc.exact, "20-term family was not sampled");
  o.require(z <= 3.0, "Monte Carlo off by " + sci(z) + " standard errors");
  o.note("exact " + sci(worst) + ", MC z " + sci(z));
  return o;
}

Outcome ac10_cz() {
  Outcome o;
  int runs = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const GridFunction f = random_cz_function(12, seed);
    for (double alpha : {0.25, 0.5, 1.0, 2.0, 4.0}) {
      const auto dec = cz_decompose(f, alpha);
      const auto rep = verify_cz(dec, f);
      ++runs;
      for (const auto& c : rep.checks) {
        o.require(c.pass, "seed " + std::to_string(seed) + " alpha " + sci(alpha) + " " + c.name);
      }
    }
  }
  o.note(std::to_string(runs) + " decompositions");
  return o;
}

Outcome ac11_marcinkiewicz_weak_type() {
  Outcome o;
  auto fn = [](const auto& x) {
    const double t = x[0];
    double v = 0.0;
    if (t >= -0.3 && t < -0.1) v += 3.0;
    if (t >= 0.2 && t < 0.25) v += 8.0;
    if (t >= 0.5 && t < 0.9) v -= 2.0;
    return v;
  };
  std::vector<double> ratios;
  for (int J : {9, 10}) {
    const GridFunction f = GridFunction::sample(J, centered_box(1, J, 0), fn);
    const auto dec = cz_decompose(f, 1.0);
    const auto m = marcinkiewicz_integral(dec, 2.0);
    o.require(std::isfinite(m.ratio) && m.ratio > 0.0, "integral not finite at J=" + std::to_string(J));
    ratios.push_back(m.ratio);
  }
  const double change = std::abs(ratios[1] - ratios[0]) / ratios[0];
  o.require(change <= 0.1, "refinement change " + sci(change));

  const TensorBanks banks(find_bank("db4"), 1, 12);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto corpus = extended_corpus(banks, 4, 5, seed);
    const SignPattern sigma = SignPattern::random(1, 4, seed);
    for (const auto& e : corpus) {
      std::vector<double> alphas;
      const double top = sup_norm(e.f);
      for (int i = 1; i <= 20; ++i) alphas.push_back(top * i / 10.0);
      const auto rows = weak_type_measure([&](const GridFunction& g) { return sign_operator(g, sigma, banks); },
                                          e.f, alphas);
      for (const auto& r : rows) worst = std::max(worst, r.l2_statistic);
    }
  }
  o.require(worst <= 1.0 + 1e-6, "weak L2 statistic " + sci(worst));
  o.note("M ratio " + sci(ratios[0]) + "->" + sci(ratios[1]) + ", weak L2 max " + sci(worst));
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "biorthogonality", 5, ac1_biorthogonality},
      {2, "projector_algebra_1d", 30, ac2_projector_algebra},
      {3, "parseval_reconstruction", 60, ac3_parseval},
      {4, "tensor_equivalences", 60, ac4_tensor_equivalences},
      {5, "convergence", 60, ac5_convergence},
      {6, "p2_square_function_identity", 30, ac6_p2_identity},
      {7, "sign_operator_uniformity", 300, ac7_sign_uniformity},
      {8, "square_function_ratio_stability", 600, ac8_ratio_stability},
      {9, "khintchine", 10, ac9_khintchine},
      {10, "cz_decomposition", 30, ac10_cz},
      {11, "marcinkiewicz_weak_type", 60, ac11_marcinkiewicz_weak_type},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) o.require(false, "runtime over budget");
    if (!o.pass) ++failures;
    std::printf("AC%-2d %-34s %s  %.1fs  %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
