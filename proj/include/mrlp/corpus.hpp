#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mrlp/grid_function.hpp"
#include "mrlp/mrand.hpp"

namespace mrlp {

struct CorpusEntry {
  std::string id;
  GridFunction f;
  /// Built as a finite combination of phi(2^K . - nu) in every axis, so the
  /// level-K truncation is exact for it.
  bool in_vk = false;
};

/// Box [-2^m, 2^m)^d in cells of depth J.
Box centered_box(int dim, int depth, int m = 1);

// Generators. All are sampled at cell midpoints on centered_box(dim, J).
GridFunction gaussian_bump(int dim, int depth, double center, double width);
GridFunction tensor_bump(int dim, int depth, double radius);  // prod_j (1 - (x_j/r)^2)^2_+, C^1
GridFunction radial_bump(int dim, int depth, double radius);  // (1 - |x/r|^2)^2_+, C^1
GridFunction step_function(int dim, int depth, double lo, double hi, double height = 1.0);
GridFunction chirp(int dim, int depth, double omega, double radius);  // chi_{|x|<r} sin(omega |x|^2)
/// sum_nu c_nu phi(2^K x - nu) with seeded Gaussian c_nu on a window of
/// `count` shifts per axis around the origin.
GridFunction random_vk(const TensorBanks& banks, int level, int count, std::uint64_t seed);

/// The fixed corpus of the sweeps: bumps, steps, chirps and random V_K
/// elements, deterministic given (banks, K, seed).
std::vector<CorpusEntry> standard_corpus(const TensorBanks& banks, int K, std::uint64_t seed);

/// `count` functions for the sign-operator experiments (mix of the above with
/// varied parameters).
std::vector<CorpusEntry> extended_corpus(const TensorBanks& banks, int K, int count,
                                         std::uint64_t seed);

/// Real 1-D test function for the CZ runs on [-1, 1): a few random steps of
/// either sign plus isolated single-cell spikes.
GridFunction random_cz_function(int depth, std::uint64_t seed);

}  // namespace mrlp
