#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "mrlp/error.hpp"
#include "mrlp/mrand.hpp"
#include "mrlp/registry.hpp"

using namespace mrlp;

namespace {

GridFunction noise(int J, const Box& box, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  GridFunction f = GridFunction::zeros(J, box);
  for (auto& z : f.values()) z = g(rng);
  return f;
}

double rel(const GridFunction& a, const GridFunction& b, const GridFunction& f) {
  return lp_norm(difference(a, b), 2.0) / lp_norm(f, 2.0);
}

}  // namespace

TEST_SUITE("mrand") {

TEST_CASE("Haar tensor projection is the mean over dyadic rectangles") {
  const int J = 8;
  const TensorBanks banks(find_bank("haar"), 2, J);
  const auto f = noise(J, Box(MultiIndex{-5, 3}, {90, 70, 0}), 1);
  const MultiIndex kappa{2, 4};
  const auto e = project_nd(f, kappa, banks);
  const std::int64_t w0 = 1 << (J - 2);
  const std::int64_t w1 = 1 << (J - 4);
  auto floor_to = [](std::int64_t n, std::int64_t w) { return (n >= 0 ? n / w : -((-n + w - 1) / w)) * w; };
  double worst = 0.0;
  for (std::int64_t a = -16; a < 48; a += 3) {
    for (std::int64_t b = 0; b < 32; b += 2) {
      const std::int64_t qa = floor_to(a, w0);
      const std::int64_t qb = floor_to(b, w1);
      double mean = 0.0;
      for (std::int64_t x = qa; x < qa + w0; ++x) {
        for (std::int64_t y = qb; y < qb + w1; ++y) mean += f.at(MultiIndex{x, y}).real();
      }
      mean /= static_cast<double>(w0 * w1);
      worst = std::max(worst, std::abs(e.at(MultiIndex{a, b}).real() - mean));
    }
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("strided kernel agrees with the slice-by-slice reference") {
  const TensorBanks banks({find_bank("db2"), find_bank("db3"), find_bank("haar")}, 7);
  const auto f = noise(7, Box(MultiIndex{-9, 0, 4}, {21, 17, 12}), 2);
  for (int axis = 0; axis < 3; ++axis) {
    const AxisOperator op{axis, std::make_shared<LevelCombination>(LevelCombination::detail(banks.axis(axis), 2))};
    const auto a = apply_axis(op, f);
    const auto b = apply_axis_by_slices(op, f);
    REQUIRE(a.box() == b.box());
    CHECK(std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(Complex)) == 0);
  }
}

TEST_CASE("inclusion-exclusion equals the factorized mixed difference") {
  const TensorBanks banks({find_bank("db2"), find_bank("db4")}, 8);
  const auto f = noise(8, Box(MultiIndex{-100, -40}, {150, 90, 0}), 3);
  for (const auto& kappa : box_indices(MultiIndex{2, 3})) {
    CAPTURE(kappa.str());
    CHECK(rel(mixed_detail_inclusion_exclusion(f, kappa, banks), mixed_detail(f, kappa, banks), f) < 1e-12);
  }
}

TEST_CASE("blocks arrive in order and sum to the partial sum") {
  const TensorBanks banks(find_bank("db3"), 2, 8);
  const auto f = noise(8, Box(MultiIndex{0, 0}, {64, 64, 0}), 4);
  const MultiIndex k{2, 1};
  std::vector<MultiIndex> seen;
  GridFunction sum = GridFunction::zeros(8, block_hull(f.box(), k, banks));
  for_each_block(f, k, banks, [&](const MultiIndex& kappa, const GridFunction& b) {
    seen.push_back(kappa);
    CHECK(rel(b, mixed_detail(f, kappa, banks), f) < 1e-14);
    sum.add_scaled(b, 1.0);
  });
  CHECK(seen == box_indices(k));
  CHECK(rel(sum, partial_sum(f, k, banks), f) < 1e-13);
  CHECK(rel(sum, project_nd(f, k, banks), f) < 1e-12);
}

TEST_CASE("separable operators commute across axes") {
  const TensorBanks banks({find_bank("cdf24"), find_bank("db2")}, 8);
  const auto f = noise(8, Box(MultiIndex{-30, 7}, {70, 50, 0}), 5);
  const auto S = LevelCombination::projector(banks.axis(0), 3);
  const auto T = LevelCombination::detail(banks.axis(1), 2);
  const auto st = kernels::apply_lines(kernels::apply_lines(f, 1, T, banks.exec), 0, S, banks.exec);
  const auto ts = kernels::apply_lines(kernels::apply_lines(f, 0, S, banks.exec), 1, T, banks.exec);
  CHECK(rel(st, ts, f) < 1e-14);
}

TEST_CASE("dimension and level checks") {
  const TensorBanks banks(find_bank("haar"), 2, 6);
  const auto f = noise(6, Box(MultiIndex{0, 0}, {8, 8, 0}), 6);
  CHECK_THROWS_AS(project_nd(f, MultiIndex{1}, banks), Error);
  CHECK_THROWS_AS(project_nd(f, MultiIndex{1, -1}, banks), Error);
  CHECK_THROWS_AS(project_nd(f, MultiIndex{3, 0}, banks), Error);
  CHECK_THROWS_AS(TensorBanks(find_bank("haar"), 4, 6), Error);
  CHECK(TensorBanks({find_bank("db2"), find_bank("db3")}, 8).label() == "db2*db3");
}

}  // TEST_SUITE
