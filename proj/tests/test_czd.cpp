#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <utility>

#include "mrlp/corpus.hpp"
#include "mrlp/czd.hpp"
#include "mrlp/error.hpp"

using namespace mrlp;

namespace {

template <class F>
ErrorKind kind_of(F&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

GridFunction on_cells(int J, std::int64_t lo, const std::vector<double>& v) {
  std::vector<Complex> data(v.begin(), v.end());
  return GridFunction(J, Box(MultiIndex{lo}, {static_cast<std::int64_t>(v.size()), 0, 0}), std::move(data));
}

// Independent scan: every dyadic interval below the root, averaged from a
// prefix sum, kept when it exceeds alpha and no strict ancestor does.
std::set<std::pair<int, std::int64_t>> brute_cubes(const GridFunction& f, double alpha, int m) {
  const int J = f.depth();
  const std::int64_t half = std::int64_t{1} << (J + m);
  std::vector<double> pre(static_cast<std::size_t>(2 * half + 1), 0.0);
  const Interval b = f.box().axis_interval(0);
  for (std::int64_t c = -half; c < half; ++c) {
    double v = 0.0;
    if (c >= b.lo && c < b.hi()) v = std::abs(f.values()[static_cast<std::size_t>(c - b.lo)].real());
    pre[static_cast<std::size_t>(c + half + 1)] = pre[static_cast<std::size_t>(c + half)] + v;
  }
  auto avg = [&](int k, std::int64_t n) {
    const std::int64_t len = std::int64_t{1} << (J - k);
    const std::int64_t lo = n * len;
    return (pre[static_cast<std::size_t>(lo + len + half)] - pre[static_cast<std::size_t>(lo + half)]) /
           static_cast<double>(len);
  };
  std::set<std::pair<int, std::int64_t>> out;
  for (int k = -m; k <= J; ++k) {
    const std::int64_t count = std::int64_t{1} << (k + m);
    for (std::int64_t n = -count; n < count; ++n) {
      if (!(avg(k, n) > alpha)) continue;
      bool maximal = true;
      int kk = k;
      std::int64_t nn = n;
      while (kk > -m) {
        --kk;
        nn = nn >= 0 ? nn / 2 : -((-nn + 1) / 2);
        if (avg(kk, nn) > alpha) maximal = false;
      }
      if (maximal) out.insert({k, n});
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("czd") {

TEST_CASE("indicator of [0, 1/4) gives one cube at alpha 1/2") {
  const int J = 8;
  std::vector<double> v(64, 1.0);
  const auto f = on_cells(J, 0, v);
  const auto dec = cz_decompose(f, 0.5);
  CHECK(dec.root_exponent == 0);
  REQUIRE(dec.cubes.size() == 1);
  CHECK(dec.cubes[0].q == DyadicInterval{2, 0});
  CHECK(dec.cubes[0].average == doctest::Approx(1.0));
  CHECK(dec.measure_w() == doctest::Approx(0.25));
  REQUIRE(dec.bad.size() == 1);
  for (const auto& z : dec.bad[0].values()) CHECK(std::abs(z) == 0.0);
  CHECK(verify_cz(dec, f).all_pass());
}

TEST_CASE("root grows until its average drops to alpha") {
  std::vector<double> v(256, 1.0);
  const auto f = on_cells(7, -128, v);  // 1 on [-1, 1)
  const auto dec = cz_decompose(f, 0.9);
  CHECK(dec.root_exponent == 1);
  REQUIRE(dec.cubes.size() == 2);
  CHECK(dec.cubes[0].q == DyadicInterval{0, -1});
  CHECK(dec.cubes[1].q == DyadicInterval{0, 0});
}

TEST_CASE("cubes match a brute-force maximal dyadic scan") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const auto f = random_cz_function(9, seed);
    for (double alpha : {0.5, 2.0, 8.0}) {
      CZDecomposition dec;
      try {
        dec = cz_decompose(f, alpha);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AlphaTooSmall);
        continue;
      }
      std::set<std::pair<int, std::int64_t>> got;
      for (const auto& c : dec.cubes) got.insert({c.q.k, c.q.n});
      CHECK(got == brute_cubes(f, alpha, dec.root_exponent));
      const auto rep = verify_cz(dec, f);
      CHECK(rep.all_pass());
      for (const auto& c : dec.cubes) {
        CHECK(c.average > alpha);
        CHECK(c.average <= 2.0 * alpha * (1.0 + 1e-12));
      }
    }
  }
}

TEST_CASE("good plus bad parts reconstruct f") {
  const auto f = random_cz_function(9, 11);
  const auto dec = cz_decompose(f, 1.0);
  GridFunction sum = dec.good;
  for (const auto& b : dec.bad) sum.add_scaled(b, 1.0);
  CHECK(lp_norm(difference(sum, f), 2.0) <= 1e-12 * lp_norm(f, 2.0));
  for (const auto& b : dec.bad) {
    Complex s = 0.0;
    for (const auto& z : b.values()) s += z;
    CHECK(std::abs(s) * b.step() <= 1e-12 * l1_norm(f));
  }
}

TEST_CASE("errors") {
  std::vector<double> zero(16, 0.0);
  CHECK(kind_of([&] { (void)cz_decompose(on_cells(6, 0, zero), 1.0); }) == ErrorKind::InvalidArgument);
  std::vector<double> v(8, 1.0);
  CHECK(kind_of([&] { (void)cz_decompose(on_cells(6, 0, v), 0.0); }) == ErrorKind::InvalidArgument);
  CHECK(kind_of([&] { (void)cz_decompose(on_cells(6, 0, v), 1e-30); }) == ErrorKind::AlphaTooSmall);

  std::vector<double> ones(128, 1.0);
  const auto dec = cz_decompose(on_cells(6, -64, ones), 0.9);
  CHECK(kind_of([&] { (void)marcinkiewicz_integral(dec, 0.5); }) == ErrorKind::DegenerateF);
}

TEST_CASE("Marcinkiewicz integral is positive and finite") {
  const auto f = random_cz_function(9, 4);
  const auto dec = cz_decompose(f, 1.0);
  const auto m = marcinkiewicz_integral(dec, 2.0);
  CHECK(m.measure_w == doctest::Approx(dec.measure_w()));
  if (!dec.cubes.empty()) {
    CHECK(m.integral > 0.0);
    CHECK(std::isfinite(m.ratio));
  }
}

TEST_CASE("weak-type statistics of the identity on a step") {
  std::vector<double> v(64, 1.0);
  const auto f = on_cells(7, 0, v);  // 1 on [0, 1/2)
  const auto rows = weak_type_measure([](const GridFunction& g) { return g; }, f, {0.25, 0.5, 0.99, 1.0});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].measure == doctest::Approx(0.5));
  CHECK(rows[0].l1_statistic == doctest::Approx(0.25));
  CHECK(rows[2].l2_statistic == doctest::Approx(0.99));
  CHECK(rows[3].measure == 0.0);
}

}
