#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrlp/corpus.hpp"
#include "mrlp/mrand.hpp"

namespace mrlp {

struct RatioRecord {
  std::string filters;
  int d = 1;
  double p = 2.0;
  int J = 0;
  int K = 0;
  std::string function_id;
  double norm_f = 0.0;
  double norm_s = 0.0;
  double ratio = 0.0;       // ||S_K f||_p / ||f||_p
  double tail = 0.0;        // ||f - E_{K e} f||_p
  double norm_ek = 0.0;     // ||E_{K e} f||_p
  double sign_max = 0.0;    // max over trials of ||T_sigma f||_p / ||f||_p
  double sign_min = 0.0;
  bool in_vk = false;
  std::string status = "ok";  // or the reason the entry was skipped
  double runtime = 0.0;       // seconds; kept out of the golden CSV
};

struct PSummary {
  double p = 2.0;
  std::size_t count = 0;
  double ratio_min = 0.0;  // lower square-function constant estimate
  double ratio_max = 0.0;  // upper square-function constant estimate
  double sign_max = 0.0;
  double sign_min = 0.0;
};

struct SweepSummary {
  std::string filters;
  int d = 1;
  int J = 0;
  int K = 0;
  int trials = 0;
  std::vector<PSummary> per_p;
  std::size_t skipped = 0;
};

struct SweepOptions {
  std::vector<double> ps{1.25, 1.5, 2.0, 4.0};
  int K = 4;
  int trials = 20;
  std::uint64_t seed = 1;
  int jobs = 0;  // 0: OpenMP default
};

/// Ratio records ordered by (function, p); sign patterns are seeded per
/// (seed, function index, trial) so the output does not depend on scheduling.
std::vector<RatioRecord> lp_sweep(const std::vector<CorpusEntry>& corpus, const TensorBanks& banks,
                                  const SweepOptions& options);

SweepSummary summarize(const std::vector<RatioRecord>& records, int trials);

/// Per-function block decomposition reused by the sweep and the tests:
/// blocks E_kappa f for kappa <= K e embedded in one common box.
struct BlockSet {
  MultiIndex k;
  Box box;
  std::vector<MultiIndex> kappas;
  std::vector<std::vector<Complex>> blocks;

  static BlockSet build(const GridFunction& f, int K, const TensorBanks& banks);
  /// sum_kappa w(kappa) E_kappa f on the common box.
  template <class W>
  GridFunction combine(int depth, W&& weight) const;
  GridFunction square_function(int depth) const;
};

template <class W>
GridFunction BlockSet::combine(int depth, W&& weight) const {
  std::vector<Complex> out(box.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const double w = weight(kappas[b]);
    if (w == 0.0) continue;
    const auto& v = blocks[b];
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * v[i];
  }
  return GridFunction(depth, box, std::move(out));
}

}  // namespace mrlp
