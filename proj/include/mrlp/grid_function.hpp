#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mrlp/multi_index.hpp"

namespace mrlp {

using Complex = std::complex<double>;

/// Half-open run of grid cells [lo, lo + len).
struct Interval {
  std::int64_t lo = 0;
  std::int64_t len = 0;

  std::int64_t hi() const { return lo + len; }
  bool empty() const { return len <= 0; }
  bool contains(const Interval& other) const {
    return other.empty() || (other.lo >= lo && other.hi() <= hi());
  }
  bool operator==(const Interval& o) const { return lo == o.lo && len == o.len; }
};

Interval hull(const Interval& a, const Interval& b);
Interval intersect(const Interval& a, const Interval& b);

/// Axis-aligned box of grid cells: origin (global cell index of the corner)
/// plus per-axis extents.
class Box {
 public:
  Box() = default;
  Box(MultiIndex origin, std::array<std::int64_t, kMaxDim> shape);
  static Box from_intervals(const std::vector<Interval>& axes);

  int dim() const { return origin_.dim(); }
  const MultiIndex& origin() const { return origin_; }
  std::int64_t extent(int axis) const { return shape_[static_cast<std::size_t>(axis)]; }
  Interval axis_interval(int axis) const { return {origin_[axis], extent(axis)}; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool contains(const Box& other) const;
  Box with_axis(int axis, Interval iv) const;
  bool operator==(const Box& other) const;
  std::string str() const;

 private:
  MultiIndex origin_;
  std::array<std::int64_t, kMaxDim> shape_{};
};

Box hull(const Box& a, const Box& b);
Box intersect(const Box& a, const Box& b);

/// Complex samples of a compactly supported function on the uniform dyadic
/// grid of step 2^-depth in every axis. The sample stored for cell n is the
/// value at the cell midpoint (n + 1/2) 2^-depth; the function is zero outside
/// the box. Data is row-major with the last axis contiguous.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(int depth, Box box, std::vector<Complex> data, std::string provenance = {});

  static GridFunction zeros(int depth, Box box, std::string provenance = {});

  /// Samples `fn` at the cell midpoints. `fn` receives a std::array<double, 3>
  /// holding the coordinates (unused trailing entries are zero).
  template <class Fn>
  static GridFunction sample(int depth, const Box& box, Fn&& fn, std::string provenance = {});

  int dim() const { return box_.dim(); }
  int depth() const { return depth_; }
  const Box& box() const { return box_; }
  double step() const;
  double cell_volume() const;
  std::size_t size() const { return data_.size(); }
  std::span<const Complex> values() const { return data_; }
  std::span<Complex> values() { return data_; }
  const std::string& provenance() const { return provenance_; }
  void set_provenance(std::string p) { provenance_ = std::move(p); }

  /// Midpoint coordinate of global cell `cell` along any axis.
  double coordinate(std::int64_t cell) const;
  /// Value at a global cell index; zero outside the box.
  Complex at(const MultiIndex& cell) const;
  std::array<std::int64_t, kMaxDim> strides() const;

  /// Zero extension onto a box that contains this one.
  GridFunction embedded(const Box& larger) const;
  /// this += weight * g; g's box must lie inside this box (same depth).
  void add_scaled(const GridFunction& g, Complex weight);
  bool is_real() const;
  /// Throws InvalidArgument if any sample is NaN or infinite.
  void check_finite() const;

 private:
  int depth_ = 0;
  Box box_;
  std::vector<Complex> data_;
  std::string provenance_;
};

/// <f, g> = integral f conj(g), midpoint quadrature. Boxes may differ; the
/// sum runs over their intersection (zero extension).
Complex inner_product(const GridFunction& f, const GridFunction& g);

/// (sum |f|^p h^d)^(1/p) for 1 < p < infinity.
double lp_norm(const GridFunction& f, double p);
double l1_norm(const GridFunction& f);
double sup_norm(const GridFunction& f);

/// f - g on the hull of the two boxes.
GridFunction difference(const GridFunction& f, const GridFunction& g);
GridFunction scaled(const GridFunction& f, Complex factor);

/// (h_{2^k} f)(x) = f(2^k x). On the midpoint grid this is exact: the data is
/// unchanged and the depth becomes depth + k.
GridFunction dilate(const GridFunction& f, int k);

/// 1-D lines of f along `axis` (0-based), ordered by the row-major index of
/// the remaining axes.
std::vector<GridFunction> axis_slices(const GridFunction& f, int axis);
/// Inverse of axis_slices; `box` is the box of the original function.
GridFunction reassemble(const std::vector<GridFunction>& slices, int depth, const Box& box,
                        int axis);

// ---------------------------------------------------------------------------

template <class Fn>
GridFunction GridFunction::sample(int depth, const Box& box, Fn&& fn, std::string provenance) {
  GridFunction g = zeros(depth, box, std::move(provenance));
  const int d = box.dim();
  const double h = g.step();
  std::array<std::int64_t, kMaxDim> idx{};
  std::array<double, kMaxDim> x{};
  for (std::size_t lin = 0; lin < g.data_.size(); ++lin) {
    for (int j = 0; j < d; ++j) {
      x[static_cast<std::size_t>(j)] =
          (static_cast<double>(box.origin()[j] + idx[static_cast<std::size_t>(j)]) + 0.5) * h;
    }
    g.data_[lin] = Complex(fn(x));
    for (int j = d - 1; j >= 0; --j) {
      auto& i = idx[static_cast<std::size_t>(j)];
      if (++i < box.extent(j)) break;
      i = 0;
    }
  }
  g.check_finite();
  return g;
}

}  // namespace mrlp
