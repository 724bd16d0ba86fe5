#include "mrlp/lpharness.hpp"

#include <cmath>
#include <random>

#include "mrlp/error.hpp"

namespace mrlp {

SignPattern::SignPattern(std::vector<std::vector<int>> per_axis) : axes_(std::move(per_axis)) {
  if (axes_.empty() || axes_.size() > static_cast<std::size_t>(kMaxDim)) {
    fail(ErrorKind::DimensionMismatch, "sign pattern needs 1..3 axes");
  }
  for (const auto& a : axes_) {
    if (a.empty() || a.size() != axes_.front().size()) {
      fail(ErrorKind::InvalidArgument, "sign sequences must share a nonzero length");
    }
    for (int s : a) {
      if (s != 1 && s != -1) fail(ErrorKind::InvalidArgument, "signs must be +1 or -1");
    }
  }
}

SignPattern SignPattern::all_plus(int dim, int K) {
  return SignPattern(std::vector<std::vector<int>>(static_cast<std::size_t>(dim),
                                                   std::vector<int>(static_cast<std::size_t>(K + 1), 1)));
}

SignPattern SignPattern::random(int dim, int K, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> axes(static_cast<std::size_t>(dim));
  for (auto& a : axes) {
    for (int k = 0; k <= K; ++k) a.push_back((rng() >> 63) ? 1 : -1);
  }
  return SignPattern(std::move(axes));
}

SignPattern SignPattern::from_table(int dim, int K, const std::map<MultiIndex, int>& table) {
  auto lookup = [&](const MultiIndex& kappa) {
    auto it = table.find(kappa);
    if (it == table.end()) fail(ErrorKind::InvalidArgument, "sign table misses " + kappa.str());
    if (it->second != 1 && it->second != -1) fail(ErrorKind::InvalidArgument, "sign table holds a non-sign");
    return it->second;
  };
  const int s0 = lookup(MultiIndex(dim));
  std::vector<std::vector<int>> axes(static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k <= K; ++k) {
      MultiIndex kappa(dim);
      kappa[j] = k;
      const int v = lookup(kappa);
      axes[static_cast<std::size_t>(j)].push_back(j == 0 ? v : v * s0);
    }
  }
  SignPattern p(std::move(axes));
  for (const auto& kappa : box_indices(MultiIndex(dim, K))) {
    if (p.sign(kappa) != lookup(kappa)) {
      fail(ErrorKind::NonProductPattern, "sign table is not of product form at " + kappa.str());
    }
  }
  return p;
}

int SignPattern::sign(const MultiIndex& kappa) const {
  if (kappa.dim() != dim()) fail(ErrorKind::DimensionMismatch, "sign lookup dimension");
  int s = 1;
  for (int j = 0; j < dim(); ++j) {
    if (kappa[j] < 0 || kappa[j] > levels()) fail(ErrorKind::LevelOverflow, "sign lookup " + kappa.str());
    s *= axes_[static_cast<std::size_t>(j)][static_cast<std::size_t>(kappa[j])];
  }
  return s;
}

GridFunction square_function(const GridFunction& f, int K, const TensorBanks& banks) {
  const MultiIndex k(f.dim(), K);
  GridFunction acc = GridFunction::zeros(f.depth(), block_hull(f.box(), k, banks), "S f");
  auto dst = acc.values();
  const auto sa = acc.strides();
  for_each_block(f, k, banks, [&](const MultiIndex&, const GridFunction& block) {
    // Blocks sit inside the hull; walk them row by row.
    const auto sb = block.strides();
    const auto src = block.values();
    for (std::size_t lin = 0; lin < src.size(); ++lin) {
      std::int64_t rem = static_cast<std::int64_t>(lin);
      std::int64_t off = 0;
      for (int j = 0; j < f.dim(); ++j) {
        const std::int64_t i = rem / sb[static_cast<std::size_t>(j)];
        rem %= sb[static_cast<std::size_t>(j)];
        off += (i + block.box().origin()[j] - acc.box().origin()[j]) * sa[static_cast<std::size_t>(j)];
      }
      dst[static_cast<std::size_t>(off)] += std::norm(src[lin]);
    }
  });
  for (auto& z : dst) z = std::sqrt(z.real());
  return acc;
}

GridFunction sign_operator(const GridFunction& f, const SignPattern& sigma, const TensorBanks& banks) {
  if (sigma.dim() != f.dim()) fail(ErrorKind::DimensionMismatch, "sign pattern dimension");
  if (sigma.levels() > banks.max_level()) fail(ErrorKind::LevelOverflow, "sign pattern deeper than the grid allows");
  return apply_separable(f, banks, [&](int j) {
    return LevelCombination::signs(banks.axis(j), sigma.axis(j));
  });
}

int rademacher(const MultiIndex& kappa, std::span<const double> t) {
  if (static_cast<int>(t.size()) != kappa.dim()) fail(ErrorKind::DimensionMismatch, "rademacher point dimension");
  int s = 1;
  for (int j = 0; j < kappa.dim(); ++j) {
    const double tj = t[static_cast<std::size_t>(j)];
    if (!(tj > 0.0 && tj < 1.0)) fail(ErrorKind::InvalidArgument, "rademacher needs t in (0,1)^d");
    if (kappa[j] < 0 || kappa[j] > 60) fail(ErrorKind::LevelOverflow, "rademacher level");
    const double x = std::ldexp(tj, static_cast<int>(kappa[j]) + 1);  // exact
    const double fl = std::floor(x);
    if (fl == x) fail(ErrorKind::BreakpointHit, "t is a breakpoint of level " + std::to_string(kappa[j]));
    if (std::fmod(fl, 2.0) != 0.0) s = -s;
  }
  return s;
}

double RademacherFamily::l2() const {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

double khintchine_upper(double p) {
  if (p <= 2.0) return 1.0;
  return std::sqrt(2.0) * std::pow(std::tgamma((p + 1.0) / 2.0) / std::sqrt(M_PI), 1.0 / p);
}

double khintchine_lower(double p) {
  if (p >= 2.0) return 1.0;
  const double a = std::pow(2.0, 0.5 - 1.0 / p);
  const double b = std::sqrt(2.0) * std::pow(std::tgamma((p + 1.0) / 2.0) / std::sqrt(M_PI), 1.0 / p);
  return std::min(a, b);
}

namespace {

void check_family(const RademacherFamily& family, double p) {
  if (!std::isfinite(p) || !(p > 0.0)) fail(ErrorKind::BadExponent, "Khintchine exponent must be positive");
  if (!family.k.is_nonnegative()) fail(ErrorKind::InvalidArgument, "negative family extent");
  std::size_t expected = 1;
  for (int j = 0; j < family.k.dim(); ++j) expected *= static_cast<std::size_t>(family.k[j] + 1);
  if (family.a.size() != expected) fail(ErrorKind::InvalidArgument, "family size does not match Z_+^d(k)");
}

void finish(KhintchineResult& r, const RademacherFamily& family) {
  const int d = family.k.dim();
  r.lp_norm = std::pow(r.moment, 1.0 / r.p);
  r.l2_norm = family.l2();
  r.ratio = r.l2_norm > 0.0 ? r.lp_norm / r.l2_norm : 1.0;
  r.lower_bound = std::pow(khintchine_lower(r.p), d);
  r.upper_bound = std::pow(khintchine_upper(r.p), d);
  const double slack = r.exact ? 1e-12 : 3.0 * r.std_error / std::max(r.moment, 1e-300) / r.p;
  r.lower_ok = r.ratio >= r.lower_bound * (1.0 - slack) - 1e-15;
  r.upper_ok = r.ratio <= r.upper_bound * (1.0 + slack) + 1e-15;
}

}  // namespace

KhintchineResult khintchine_exact(const RademacherFamily& family, double p) {
  check_family(family, p);
  if (family.size() > kKhintchineExactLimit) {
    fail(ErrorKind::TooManyTerms, std::to_string(family.size()) + " terms exceed the exact limit of " +
                                      std::to_string(kKhintchineExactLimit));
  }
  const int d = family.k.dim();
  std::vector<int> offset(static_cast<std::size_t>(d) + 1, 0);
  for (int j = 0; j < d; ++j) offset[static_cast<std::size_t>(j) + 1] = offset[static_cast<std::size_t>(j)] + static_cast<int>(family.k[j]) + 1;
  const int bits = offset.back();
  const auto kappas = box_indices(family.k);
  const std::uint64_t count = std::uint64_t{1} << bits;
  double acc = 0.0;
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    double x = 0.0;
    for (std::size_t i = 0; i < kappas.size(); ++i) {
      int s = 1;
      for (int j = 0; j < d; ++j) {
        if ((mask >> (offset[static_cast<std::size_t>(j)] + kappas[i][j])) & 1U) s = -s;
      }
      x += s * family.a[i];
    }
    acc += std::pow(std::abs(x), p);
  }
  KhintchineResult r;
  r.exact = true;
  r.p = p;
  r.moment = acc / static_cast<double>(count);
  r.samples = count;
  finish(r, family);
  return r;
}

KhintchineResult khintchine_monte_carlo(const RademacherFamily& family, double p,
                                        std::uint64_t samples, std::uint64_t seed) {
  check_family(family, p);
  if (samples < 2) fail(ErrorKind::InvalidArgument, "Monte Carlo needs at least two samples");
  const int d = family.k.dim();
  const auto kappas = box_indices(family.k);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> t(static_cast<std::size_t>(d));
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t n = 0; n < samples; ++n) {
    double x = 0.0;
    for (;;) {
      for (auto& v : t) v = unif(rng);
      try {
        x = 0.0;
        for (std::size_t i = 0; i < kappas.size(); ++i) x += rademacher(kappas[i], t) * family.a[i];
        break;
      } catch (const Error&) {
        // Breakpoint or t == 0: draw again.
      }
    }
    const double v = std::pow(std::abs(x), p);
    sum += v;
    sum_sq += v * v;
  }
  const double ns = static_cast<double>(samples);
  KhintchineResult r;
  r.exact = false;
  r.p = p;
  r.moment = sum / ns;
  const double var = std::max(0.0, (sum_sq / ns - r.moment * r.moment) * ns / (ns - 1.0));
  r.std_error = std::sqrt(var / ns);
  r.samples = samples;
  finish(r, family);
  return r;
}

KhintchineResult khintchine_check(const RademacherFamily& family, double p,
                                  std::uint64_t mc_samples, std::uint64_t seed) {
  if (family.size() <= kKhintchineExactLimit) return khintchine_exact(family, p);
  return khintchine_monte_carlo(family, p, mc_samples, seed);
}

}  // namespace mrlp
