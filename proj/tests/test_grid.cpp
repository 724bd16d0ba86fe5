#include <doctest.h>
#include <omp.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>
#include <sstream>

#include "mrlp/error.hpp"
#include "mrlp/grid_function.hpp"
#include "mrlp/grid_io.hpp"
#include "mrlp/kernels.hpp"
#include "mrlp/multi_index.hpp"

using namespace mrlp;

namespace {

GridFunction unit_step(int depth) {
  return GridFunction::sample(depth, Box(MultiIndex{-(1 << depth)}, {3 << depth, 0, 0}),
                              [](const auto& x) { return (x[0] >= 0.0 && x[0] < 1.0) ? 1.0 : 0.0; });
}

GridFunction noise(int depth, const Box& box, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  GridFunction f = GridFunction::zeros(depth, box);
  for (auto& z : f.values()) z = Complex(g(rng), g(rng));
  return f;
}

/// Three-tap filter widening each line by one cell on either side.
class Doubler : public LineTransform {
 public:
  Interval output_interval(Interval in) const override { return {in.lo - 1, in.len + 2}; }
  void apply(std::span<const Complex> in, Interval, std::span<Complex> out, Interval) const override {
    for (std::size_t i = 0; i < in.size(); ++i) {
      out[i] += 0.5 * in[i];
      out[i + 1] += in[i];
      out[i + 2] -= 0.25 * in[i];
    }
  }
};

}  // namespace

TEST_SUITE("grid") {

TEST_CASE("multi-index arithmetic and Z_+^d(k) ordering") {
  const MultiIndex a{1, 2};
  const MultiIndex b{0, 3};
  CHECK((a + b) == MultiIndex{1, 5});
  CHECK(a.min_component() == 1);
  CHECK(b.max_component() == 3);
  CHECK(b.leq(MultiIndex{0, 3}));
  CHECK_FALSE(a.leq(b));
  const auto idx = box_indices(MultiIndex{1, 2});
  REQUIRE(idx.size() == 6);
  CHECK(idx.front() == MultiIndex{0, 0});
  CHECK(idx[1] == MultiIndex{0, 1});
  CHECK(idx.back() == MultiIndex{1, 2});
  CHECK(support_set(MultiIndex{0, 4, 1}) == 0b110U);
}

TEST_CASE("binary patterns carry sign (-1)^|eps|") {
  const auto all = BinaryPattern::all(3);
  CHECK(all.size() == 8);
  int total = 0;
  for (const auto& e : all) total += e.sign();
  CHECK(total == 0);
  CHECK(BinaryPattern(2, 0b01).support_within(MultiIndex{2, 0}));
  CHECK_FALSE(BinaryPattern(2, 0b10).support_within(MultiIndex{2, 0}));
}

TEST_CASE("norms of the unit step are one") {
  const auto f = unit_step(6);
  CHECK(lp_norm(f, 1.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(lp_norm(f, 4.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(l1_norm(f) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sup_norm(f) == 1.0);
  CHECK_THROWS_AS(lp_norm(f, 1.0), Error);
  try {
    (void)lp_norm(f, 0.5);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadExponent);
  }
}

TEST_CASE("Gaussian L2 norm matches the closed form") {
  // integral exp(-x^2 / s^2) dx = s sqrt(pi).
  const int J = 12;
  const double s = 0.3;
  const auto f = GridFunction::sample(J, Box(MultiIndex{-(4 << J)}, {8 << J, 0, 0}),
                                      [&](const auto& x) { return std::exp(-x[0] * x[0] / (2 * s * s)); });
  CHECK(std::pow(lp_norm(f, 2.0), 2) == doctest::Approx(s * std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("inner product is conjugate-linear in the second slot and uses zero extension") {
  const auto f = noise(5, Box(MultiIndex{-3}, {20, 0, 0}), 1);
  const auto g = noise(5, Box(MultiIndex{4}, {30, 0, 0}), 2);
  const Complex w(0.3, -1.2);
  const Complex lhs = inner_product(f, scaled(g, w));
  const Complex rhs = std::conj(w) * inner_product(f, g);
  CHECK(std::abs(lhs - rhs) < 1e-14);
  Complex direct = 0.0;
  for (std::int64_t n = 4; n < 17; ++n) direct += f.at(MultiIndex{n}) * std::conj(g.at(MultiIndex{n}));
  CHECK(std::abs(inner_product(f, g) - direct * f.step()) < 1e-14);
}

TEST_CASE("difference lives on the hull and add_scaled needs containment") {
  const auto f = noise(4, Box(MultiIndex{0}, {5, 0, 0}), 3);
  const auto g = noise(4, Box(MultiIndex{8}, {2, 0, 0}), 4);
  const auto d = difference(f, g);
  CHECK(d.box() == Box(MultiIndex{0}, {10, 0, 0}));
  CHECK(d.at(MultiIndex{9}) == -g.at(MultiIndex{9}));
  GridFunction h = f;
  CHECK_THROWS_AS(h.add_scaled(g, 1.0), Error);
}

TEST_CASE("dilation is exact on the midpoint grid") {
  const auto f = unit_step(8);
  const auto g = dilate(f, 2);  // chi_[0, 1/4)
  CHECK(g.depth() == 10);
  CHECK(l1_norm(g) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g.coordinate(0) == doctest::Approx(0.5 * std::ldexp(1.0, -10)));
  try {
    (void)dilate(f, 7);
    FAIL("expected ResolutionExhausted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ResolutionExhausted);
  }
}

TEST_CASE("axis slices reassemble to the original") {
  const auto f = noise(4, Box(MultiIndex{-2, 5, 1}, {3, 4, 5}), 5);
  for (int axis = 0; axis < 3; ++axis) {
    const auto s = axis_slices(f, axis);
    CHECK(s.size() == f.size() / static_cast<std::size_t>(f.box().extent(axis)));
    const auto back = reassemble(s, f.depth(), f.box(), axis);
    CHECK(back.box() == f.box());
    CHECK(std::equal(back.values().begin(), back.values().end(), f.values().begin()));
  }
  try {
    (void)axis_slices(f, 3);
    FAIL("expected AxisOutOfRange");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::AxisOutOfRange);
  }
}

TEST_CASE("serial and OpenMP kernels agree bit for bit") {
  const auto f = noise(5, Box(MultiIndex{-7, 3, 0}, {19, 33, 6}), 6);
  const Doubler op;
  for (int axis = 0; axis < 3; ++axis) {
    const auto a = kernels::apply_lines_reference(f, axis, op);
    const auto b = kernels::apply_lines_omp(f, axis, op);
    REQUIRE(a.box() == b.box());
    CHECK(std::memcmp(a.values().data(), b.values().data(), a.size() * sizeof(Complex)) == 0);
  }
  const auto v = noise(3, Box(MultiIndex{0}, {100003, 0, 0}), 7);
  // Reductions add fixed-size chunks in order, so the thread count never
  // changes the result; the serial loop differs only by rounding.
  const auto vv = v.values();
  const double p1 = kernels::sum_abs_pow_omp(vv, 1.7);
  omp_set_num_threads(3);
  CHECK(kernels::sum_abs_pow_omp(vv, 1.7) == p1);
  const double a3 = kernels::sum_abs_omp(vv);
  const double n3 = kernels::sum_norm_omp(vv);
  omp_set_num_threads(1);
  CHECK(kernels::sum_abs_omp(vv) == a3);
  CHECK(kernels::sum_norm_omp(vv) == n3);
  CHECK(kernels::sum_abs_pow_reference(vv, 1.7) == doctest::Approx(p1).epsilon(1e-12));
  CHECK(kernels::sum_abs_reference(vv) == doctest::Approx(a3).epsilon(1e-12));
  CHECK(kernels::sum_norm_reference(vv) == doctest::Approx(n3).epsilon(1e-12));
}

TEST_CASE("HWGF1 round trip and corruption") {
  const auto f = noise(7, Box(MultiIndex{-4, 9}, {5, 3, 0}), 8);
  std::stringstream s;
  write_grid_function(s, f);
  const auto g = read_grid_function(s);
  CHECK(g.depth() == 7);
  CHECK(g.box() == f.box());
  CHECK(std::equal(g.values().begin(), g.values().end(), f.values().begin()));
  std::string bytes;
  {
    std::stringstream t;
    write_grid_function(t, f);
    bytes = t.str();
  }
  std::stringstream truncated(bytes.substr(0, bytes.size() - 5));
  CHECK_THROWS_AS(read_grid_function(truncated), Error);
  std::stringstream wrong("HWGF2" + bytes.substr(5));
  CHECK_THROWS_AS(read_grid_function(wrong), Error);
}

TEST_CASE("CSV quoting and number formatting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("non-finite samples are rejected") {
  CHECK_THROWS_AS(GridFunction::sample(3, Box(MultiIndex{0}, {4, 0, 0}), [](const auto&) { return NAN; }), Error);
}

}  // TEST_SUITE
