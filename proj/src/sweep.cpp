#include "mrlp/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include <omp.h>

#include "mrlp/error.hpp"
#include "mrlp/lpharness.hpp"

namespace mrlp {

BlockSet BlockSet::build(const GridFunction& f, int K, const TensorBanks& banks) {
  BlockSet s;
  s.k = MultiIndex(f.dim(), K);
  s.box = block_hull(f.box(), s.k, banks);
  for_each_block(f, s.k, banks, [&](const MultiIndex& kappa, const GridFunction& block) {
    s.kappas.push_back(kappa);
    const GridFunction e = block.embedded(s.box);
    s.blocks.emplace_back(e.values().begin(), e.values().end());
  });
  return s;
}

GridFunction BlockSet::square_function(int depth) const {
  std::vector<Complex> out(box.size());
  for (const auto& v : blocks) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += std::norm(v[i]);
  }
  for (auto& z : out) z = std::sqrt(z.real());
  return GridFunction(depth, box, std::move(out));
}

namespace {

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  // splitmix64 finalizer over a combined key.
  std::uint64_t z = a * 0x9e3779b97f4a7c15ULL + b + 0x632be59bd9b4e019ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<RatioRecord> sweep_one(const CorpusEntry& entry, std::size_t index,
                                   const TensorBanks& banks, const SweepOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const GridFunction& f = entry.f;
  std::vector<RatioRecord> out;
  auto base = [&](double p) {
    RatioRecord r;
    r.filters = banks.label();
    r.d = f.dim();
    r.p = p;
    r.J = banks.grid_depth();
    r.K = opt.K;
    r.function_id = entry.id;
    r.in_vk = entry.in_vk;
    return r;
  };
  if (sup_norm(f) == 0.0) {
    for (double p : opt.ps) {
      RatioRecord r = base(p);
      r.status = "skipped: zero signal";
      out.push_back(r);
    }
    return out;
  }

  const BlockSet blocks = BlockSet::build(f, opt.K, banks);
  const GridFunction sf = blocks.square_function(f.depth());
  const GridFunction ek = blocks.combine(f.depth(), [](const MultiIndex&) { return 1.0; });
  const GridFunction tail = difference(f, ek);

  std::vector<SignPattern> patterns;
  for (int t = 0; t < opt.trials; ++t) {
    patterns.push_back(SignPattern::random(f.dim(), opt.K, mix(mix(opt.seed, index), static_cast<std::uint64_t>(t))));
  }
  std::vector<std::vector<double>> sign_norms(opt.ps.size());
  for (const auto& sigma : patterns) {
    const GridFunction ts = blocks.combine(f.depth(), [&](const MultiIndex& kappa) {
      return static_cast<double>(sigma.sign(kappa));
    });
    for (std::size_t i = 0; i < opt.ps.size(); ++i) sign_norms[i].push_back(lp_norm(ts, opt.ps[i]));
  }

  for (std::size_t i = 0; i < opt.ps.size(); ++i) {
    const double p = opt.ps[i];
    RatioRecord r = base(p);
    r.norm_f = lp_norm(f, p);
    r.norm_s = lp_norm(sf, p);
    r.ratio = r.norm_s / r.norm_f;
    r.tail = lp_norm(tail, p);
    r.norm_ek = lp_norm(ek, p);
    if (!sign_norms[i].empty()) {
      r.sign_max = *std::max_element(sign_norms[i].begin(), sign_norms[i].end()) / r.norm_f;
      r.sign_min = *std::min_element(sign_norms[i].begin(), sign_norms[i].end()) / r.norm_f;
    }
    out.push_back(r);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (auto& r : out) r.runtime = secs;
  return out;
}

}  // namespace

std::vector<RatioRecord> lp_sweep(const std::vector<CorpusEntry>& corpus, const TensorBanks& banks,
                                  const SweepOptions& options) {
  if (corpus.empty()) fail(ErrorKind::InvalidArgument, "lp_sweep needs a nonempty corpus");
  if (options.K < 0 || options.K > banks.max_level()) {
    fail(ErrorKind::LevelOverflow, "sweep level " + std::to_string(options.K) + " exceeds the grid cap");
  }
  for (double p : options.ps) {
    if (!std::isfinite(p) || !(p > 1.0)) fail(ErrorKind::BadExponent, "sweep exponents must lie in (1, inf)");
  }
  std::vector<std::vector<RatioRecord>> parts(corpus.size());
  const int jobs = options.jobs > 0 ? options.jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    parts[i] = sweep_one(corpus[i], i, banks, options);
  }
  std::vector<RatioRecord> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

SweepSummary summarize(const std::vector<RatioRecord>& records, int trials) {
  SweepSummary s;
  s.trials = trials;
  for (const auto& r : records) {
    if (s.filters.empty()) {
      s.filters = r.filters;
      s.d = r.d;
      s.J = r.J;
      s.K = r.K;
    }
    if (r.status != "ok") {
      ++s.skipped;
      continue;
    }
    auto it = std::find_if(s.per_p.begin(), s.per_p.end(), [&](const PSummary& q) { return q.p == r.p; });
    if (it == s.per_p.end()) {
      PSummary q;
      q.p = r.p;
      q.ratio_min = std::numeric_limits<double>::infinity();
      q.sign_min = std::numeric_limits<double>::infinity();
      s.per_p.push_back(q);
      it = s.per_p.end() - 1;
    }
    ++it->count;
    it->ratio_min = std::min(it->ratio_min, r.ratio);
    it->ratio_max = std::max(it->ratio_max, r.ratio);
    if (trials > 0) {
      it->sign_max = std::max(it->sign_max, r.sign_max);
      it->sign_min = std::min(it->sign_min, r.sign_min);
    }
  }
  for (auto& q : s.per_p) {
    if (trials == 0) q.sign_min = 0.0;
  }
  return s;
}

}  // namespace mrlp
