#include "mrlp/identities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "mrlp/error.hpp"

namespace mrlp {

namespace {

constexpr double kExactAlgebra = 1e-10;  // identities that hold up to rounding
constexpr double kMixedEquivalence = 1e-9;

double l2(const GridFunction& f) { return lp_norm(f, 2.0); }

double rel_diff(const GridFunction& a, const GridFunction& b, double scale) {
  return l2(difference(a, b)) / scale;
}

struct Tracker {
  IdentityResult r;
  void see(double v) { r.residual = std::max(r.residual, v); }
  IdentityResult done() {
    r.pass = std::isfinite(r.residual) && r.residual <= r.tolerance;
    return r;
  }
};

Tracker track(const std::string& name, double tol) { return Tracker{{name, 0.0, tol, false}}; }

bool all_haar(const TensorBanks& banks) {
  for (int j = 0; j < banks.dim(); ++j) {
    if (banks.axis(j)->bank().id != "haar") return false;
  }
  return true;
}

GridFunction unit_box_sample(int d, int J, const std::function<double(const std::array<double, kMaxDim>&)>& fn,
                             const std::string& name) {
  return GridFunction::sample(J, centered_box(d, J, 0), fn, name);
}

std::vector<IdentityResult> suite_1d(const TensorBanks& banks, const std::vector<CorpusEntry>& corpus,
                                     int K, double tol, double scale) {
  const auto& mra = *banks.axis(0);
  const auto dual_ptr = mra.role_swapped();
  const Mra1d& dual = *dual_ptr;
  auto idem = track("idempotence", tol);
  auto nest_l = track("nesting_coarse_after_fine", tol);
  auto nest_r = track("nesting_fine_after_coarse", tol);
  auto orth = track("detail_orthogonality", tol);
  auto adj = track("self_adjoint", kExactAlgebra * scale);
  auto pars = track("parseval_vk", tol);
  auto tele = track("telescoping", kExactAlgebra * scale);
  auto repro = track("reproduction_vk", tol);

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const GridFunction& f = corpus[i].f;
    const GridFunction& g = corpus[(i + 1) % corpus.size()].f;
    const double nf = l2(f);
    const double ng = l2(g);
    std::vector<GridFunction> E;
    std::vector<GridFunction> D;
    for (int k = 0; k <= K; ++k) {
      E.push_back(mra.project(f, k));
      D.push_back(k == 0 ? E[0] : difference(E[static_cast<std::size_t>(k)], E[static_cast<std::size_t>(k) - 1]));
    }
    std::vector<GridFunction> Dg;
    // Biorthogonal details are orthogonal to the dual details, not to each other.
    for (int k = 0; k <= K; ++k) Dg.push_back(dual.detail(g, k));

    for (int k = 0; k <= K; ++k) {
      const auto& Ek = E[static_cast<std::size_t>(k)];
      idem.see(rel_diff(mra.project(Ek, k), Ek, nf));
      for (int c = 0; c < k; ++c) {
        const auto& Ec = E[static_cast<std::size_t>(c)];
        nest_l.see(rel_diff(mra.project(Ek, c), Ec, nf));
        nest_r.see(rel_diff(mra.project(Ec, k), Ec, nf));
      }
      for (int c = 0; c <= K; ++c) {
        if (c == k) continue;
        orth.see(std::abs(inner_product(D[static_cast<std::size_t>(k)], Dg[static_cast<std::size_t>(c)])) / (nf * ng));
      }
      const Complex lhs = inner_product(Ek, g);
      const Complex rhs = inner_product(f, dual.project(g, k));
      adj.see(std::abs(lhs - rhs) / (nf * ng));
    }

    GridFunction sum = D[0];
    for (int k = 1; k <= K; ++k) {
      const Box b = hull(sum.box(), D[static_cast<std::size_t>(k)].box());
      GridFunction s = sum.embedded(b);
      s.add_scaled(D[static_cast<std::size_t>(k)], 1.0);
      sum = std::move(s);
    }
    tele.see(rel_diff(sum, E[static_cast<std::size_t>(K)], nf));

    if (corpus[i].in_vk) {
      double energy = 0.0;
      for (const auto& d : D) energy += std::pow(l2(d), 2);
      pars.see(std::abs(nf * nf - energy) / (nf * nf));
      repro.see(rel_diff(E[static_cast<std::size_t>(K)], f, nf));
    }
  }
  std::vector<IdentityResult> out{idem.done(), nest_l.done(), nest_r.done(), orth.done(),
                                  adj.done(),  tele.done()};
  // Parseval is an orthonormal-basis statement; biorthogonal details are not
  // orthogonal, so it is only asserted for self-dual banks.
  if (mra.bank().self_dual()) out.push_back(pars.done());
  out.push_back(repro.done());
  return out;
}

// The per-level checks in d >= 2 cost O(K^d) operator applications each;
// they run on the levels whose components are all in {0, 1, K - 1, K}, which
// covers the coarsest, finest and mixed corners.
bool spot_level(const MultiIndex& kappa, int K) {
  for (int j = 0; j < kappa.dim(); ++j) {
    const auto k = kappa[j];
    if (k != 0 && k != 1 && k != K - 1 && k != K) return false;
  }
  return true;
}

std::vector<IdentityResult> suite_nd(const TensorBanks& banks, const std::vector<CorpusEntry>& corpus,
                                     int K, double tol, double scale) {
  const int d = banks.dim();
  const TensorBanks dual = banks.role_swapped();
  const MultiIndex kvec(d, K);
  const auto levels = box_indices(kvec);
  bool self_dual = true;
  for (int j = 0; j < d; ++j) self_dual = self_dual && banks.axis(j)->bank().self_dual();

  auto equiv = track("mixed_difference_equivalence", kMixedEquivalence * scale);
  auto comm = track("axis_commutation", kExactAlgebra * scale);
  auto idem = track("block_idempotence", tol);
  auto orth = track("block_orthogonality", tol);
  auto adj = track("self_adjoint", kExactAlgebra * scale);
  auto psum = track("partial_sum_telescoping", kMixedEquivalence * scale);
  auto pyth = track("pythagoras_vk", tol);
  auto repro = track("reproduction_vk", tol);

  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const GridFunction& f = corpus[i].f;
    const GridFunction& g = corpus[(i + 1) % corpus.size()].f;
    const double nf = l2(f);
    const double ng = l2(g);

    std::vector<GridFunction> blocks;
    for_each_block(f, kvec, banks, [&](const MultiIndex&, const GridFunction& b) { blocks.push_back(b); });

    double energy = 0.0;
    for (std::size_t a = 0; a < levels.size(); ++a) {
      const MultiIndex& kappa = levels[a];
      const GridFunction& B = blocks[a];
      energy += std::pow(l2(B), 2);
      if (!spot_level(kappa, K)) continue;
      equiv.see(rel_diff(mixed_detail_inclusion_exclusion(f, kappa, banks), B, nf));
      idem.see(rel_diff(mixed_detail(B, kappa, banks), B, nf));
      // Leakage between blocks shows up first between neighbours, so only
      // pairs at sup-distance one are checked.
      for (std::size_t c = 0; c < levels.size(); ++c) {
        if (c == a || !spot_level(levels[c], K)) continue;
        const MultiIndex diff = levels[c] - kappa;
        if (std::max(std::abs(diff.min_component()), std::abs(diff.max_component())) > 1) continue;
        orth.see(l2(mixed_detail(B, levels[c], banks)) / nf);
      }
      const Complex lhs = inner_product(project_nd(f, kappa, banks), g);
      const Complex rhs = inner_product(f, project_nd(g, kappa, dual));
      adj.see(std::abs(lhs - rhs) / (nf * ng));
    }

    // V_0(E_a) V_1(E_b) = V_1(E_b) V_0(E_a) on the corners of the level box.
    for (int a : {0, K}) {
      for (int b : {0, K}) {
        const auto S = LevelCombination::projector(banks.axis(0), a);
        const auto T = LevelCombination::projector(banks.axis(1), b);
        const GridFunction st = kernels::apply_lines(kernels::apply_lines(f, 1, T, banks.exec), 0, S, banks.exec);
        const GridFunction ts = kernels::apply_lines(kernels::apply_lines(f, 0, S, banks.exec), 1, T, banks.exec);
        comm.see(rel_diff(st, ts, nf));
      }
    }

    const GridFunction EK = project_nd(f, kvec, banks);
    psum.see(rel_diff(partial_sum(f, kvec, banks), EK, nf));
    if (corpus[i].in_vk) {
      pyth.see(std::abs(nf * nf - energy) / (nf * nf));
      repro.see(rel_diff(EK, f, nf));
    }
  }
  std::vector<IdentityResult> out{equiv.done(), comm.done(), idem.done(), orth.done(),
                                  adj.done(),   psum.done()};
  if (self_dual) out.push_back(pyth.done());
  out.push_back(repro.done());
  return out;
}

}  // namespace

std::vector<CorpusEntry> identity_corpus(const TensorBanks& banks, int K, int count, std::uint64_t seed) {
  const int d = banks.dim();
  const int J = banks.grid_depth();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<CorpusEntry> out;
  for (int i = 0; i < count; ++i) {
    const std::string id = "g" + std::to_string(i);
    switch (i % 5) {
      case 0: {
        const double c = -0.4 + 0.8 * u(rng);
        const double w = 0.05 + 0.2 * u(rng);
        out.push_back({id + "_gauss", unit_box_sample(d, J, [=](const auto& x) {
          double r2 = 0.0;
          for (int j = 0; j < d; ++j) r2 += (x[static_cast<std::size_t>(j)] - c) * (x[static_cast<std::size_t>(j)] - c);
          return std::exp(-r2 / (2.0 * w * w));
        }, "gauss"), false});
        break;
      }
      case 1: {
        const double lo = -0.9 + 0.5 * u(rng);
        const double hi = lo + 0.3 + 0.5 * u(rng);
        out.push_back({id + "_step", unit_box_sample(d, J, [=](const auto& x) {
          for (int j = 0; j < d; ++j) {
            if (x[static_cast<std::size_t>(j)] < lo || x[static_cast<std::size_t>(j)] >= hi) return 0.0;
          }
          return 1.0;
        }, "step"), false});
        break;
      }
      case 2: {
        // White noise: one independent value per cell.
        GridFunction g = GridFunction::zeros(J, centered_box(d, J, 0), "noise");
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (auto& z : g.values()) z = gauss(rng);
        out.push_back({id + "_noise", std::move(g), false});
        break;
      }
      case 3: {
        const double omega = 10.0 + 30.0 * u(rng);
        out.push_back({id + "_chirp", unit_box_sample(d, J, [=](const auto& x) {
          double r2 = 0.0;
          for (int j = 0; j < d; ++j) r2 += x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
          return r2 < 0.81 ? std::sin(omega * r2) : 0.0;
        }, "chirp"), false});
        break;
      }
      default:
        out.push_back({id + "_vk", random_vk(banks, K, std::max(2, 1 << std::min(K, 4)), rng()), true});
        break;
    }
  }
  return out;
}

std::vector<IdentityResult> run_identity_suite(const TensorBanks& banks, const IdentityOptions& opt) {
  if (opt.K < 0 || opt.K > banks.max_level()) {
    fail(ErrorKind::LevelOverflow, "identity suite level K=" + std::to_string(opt.K) + " exceeds J-4=" +
                                       std::to_string(banks.max_level()));
  }
  if (opt.functions < 1) fail(ErrorKind::InvalidArgument, "identity suite needs at least one function");
  const double base = opt.algebra_tolerance > 0.0 ? opt.algebra_tolerance : (all_haar(banks) ? 1e-8 : 1e-6);
  const double tol = base * opt.tolerance_scale;
  const auto corpus = identity_corpus(banks, opt.K, std::max(opt.functions, 5)  /* at least one V_K member */, opt.seed);
  const double s = opt.tolerance_scale;
  return banks.dim() == 1 ? suite_1d(banks, corpus, opt.K, tol, s) : suite_nd(banks, corpus, opt.K, tol, s);
}

bool all_pass(const std::vector<IdentityResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const IdentityResult& r) { return r.pass; });
}

void write_identity_report(std::ostream& out, const std::vector<IdentityResult>& results) {
  for (const auto& r : results) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-32s %.3e %.1e %s\n", r.name.c_str(), r.residual, r.tolerance,
                  r.pass ? "PASS" : "FAIL");
    out << buf;
  }
}

}  // namespace mrlp
