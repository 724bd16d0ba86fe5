#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mrlp/corpus.hpp"
#include "mrlp/mrand.hpp"

namespace mrlp {

struct IdentityResult {
  std::string name;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct IdentityOptions {
  int K = 4;
  /// Tolerance for the projector algebra (idempotence, nesting, orthogonality,
  /// Parseval). Zero picks the default: 1e-8 when every axis is Haar, 1e-6
  /// otherwise, since Daubechies quadrature error enters at that level.
  double algebra_tolerance = 0.0;
  double tolerance_scale = 1.0;
  std::uint64_t seed = 1;
  int functions = 6;
};

/// Mixed test functions: smooth bumps, steps, white noise and random V_K
/// elements, all supported in [-1, 1)^d.
std::vector<CorpusEntry> identity_corpus(const TensorBanks& banks, int K, int count,
                                         std::uint64_t seed);

/// Runs the projector identities in 1-D and the tensor identities in d >= 2.
/// Each entry reports the worst relative residual over corpus and levels.
std::vector<IdentityResult> run_identity_suite(const TensorBanks& banks, const IdentityOptions& opt);

bool all_pass(const std::vector<IdentityResult>& results);
void write_identity_report(std::ostream& out, const std::vector<IdentityResult>& results);

}  // namespace mrlp
