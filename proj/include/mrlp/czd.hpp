#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "mrlp/grid_function.hpp"

namespace mrlp {

/// [n 2^-k, (n + 1) 2^-k); k may be negative for intervals longer than 1.
struct DyadicInterval {
  int k = 0;
  std::int64_t n = 0;

  double lo() const;
  double length() const;
  /// Cell range at grid depth J >= k.
  Interval cells(int depth) const;
  DyadicInterval parent() const;
  bool operator==(const DyadicInterval& o) const { return k == o.k && n == o.n; }
};

struct CzCube {
  DyadicInterval q;
  double average = 0.0;  // (1/|Q|) integral_Q |f|
  double mean = 0.0;     // (1/|Q|) integral_Q f
};

/// f = g + sum_r h_r at level alpha; W is the union of the cubes and F its
/// complement.
struct CZDecomposition {
  double alpha = 0.0;
  int root_exponent = 0;  // root interval [-2^m, 2^m)
  int depth = 0;
  std::vector<CzCube> cubes;  // sorted by position
  GridFunction good;
  std::vector<GridFunction> bad;

  double measure_w() const;
  /// True when the grid cell lies in some cube.
  bool in_w(std::int64_t cell) const;
};

inline constexpr int kMaxRootExponent = 30;

/// Dyadic stopping time: starting from the smallest root [-2^m, 2^m) that
/// contains the box and has average |f| <= alpha, bisect and keep the maximal
/// dyadic intervals whose average |f| exceeds alpha. Single cells are never
/// split further.
CZDecomposition cz_decompose(const GridFunction& f, double alpha);

struct CzCheck {
  std::string name;
  bool pass = true;
  double measured = 0.0;
  double bound = 0.0;
};

struct CzReport {
  std::vector<CzCheck> checks;
  double c3 = 0.0;  // min over cubes of inf_Q dist(x, F) / diam Q
  double c4 = 0.0;  // max of the same
  bool all_pass() const;
};

/// Measures every dyadic-constant property of the decomposition; never throws
/// on a failed property.
CzReport verify_cz(const CZDecomposition& dec, const GridFunction& f);

struct MarcinkiewiczResult {
  double integral = 0.0;  // integral over F cap [-R, R] of M
  double measure_w = 0.0;
  double ratio = 0.0;
};

/// M(x) = integral_W dist(u, F) |x - u|^-2 du, integrated over F cap [-R, R]
/// by midpoint quadrature on the decomposition grid.
MarcinkiewiczResult marcinkiewicz_integral(const CZDecomposition& dec, double radius);

struct WeakTypeRow {
  double alpha = 0.0;
  double measure = 0.0;  // mes{|Tf| > alpha}
  double l1_statistic = 0.0;  // measure * alpha / ||f||_1
  double l2_statistic = 0.0;  // measure^(1/2) * alpha / ||f||_2
};

std::vector<WeakTypeRow> weak_type_measure(const std::function<GridFunction(const GridFunction&)>& T,
                                           const GridFunction& f, const std::vector<double>& alphas);

/// Cube list as CSV rows (k, n, average).
void write_cube_csv(std::ostream& out, const CZDecomposition& dec);
/// Structured text: one `name measured bound PASS|FAIL` line per check.
void write_cz_report(std::ostream& out, const CZDecomposition& dec, const CzReport& report);

}  // namespace mrlp
