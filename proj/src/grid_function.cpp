#include "mrlp/grid_function.hpp"

#include <algorithm>
#include <cmath>

#include "mrlp/error.hpp"
#include "mrlp/kernels.hpp"

namespace mrlp {

Interval hull(const Interval& a, const Interval& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  const std::int64_t lo = std::min(a.lo, b.lo);
  return {lo, std::max(a.hi(), b.hi()) - lo};
}

Interval intersect(const Interval& a, const Interval& b) {
  const std::int64_t lo = std::max(a.lo, b.lo);
  const std::int64_t hi = std::min(a.hi(), b.hi());
  return {lo, std::max<std::int64_t>(0, hi - lo)};
}

Box::Box(MultiIndex origin, std::array<std::int64_t, kMaxDim> shape)
    : origin_(origin), shape_(shape) {
  if (origin_.dim() < 1 || origin_.dim() > kMaxDim) {
    fail(ErrorKind::InvalidArgument, "grid functions support 1 <= d <= 3");
  }
  for (int j = 0; j < kMaxDim; ++j) {
    if (j >= dim()) {
      shape_[static_cast<std::size_t>(j)] = 0;
    } else if (shape_[static_cast<std::size_t>(j)] < 0) {
      fail(ErrorKind::InvalidArgument, "negative box extent");
    }
  }
}

Box Box::from_intervals(const std::vector<Interval>& axes) {
  MultiIndex origin(static_cast<int>(axes.size()));
  std::array<std::int64_t, kMaxDim> shape{};
  for (std::size_t j = 0; j < axes.size(); ++j) {
    origin[static_cast<int>(j)] = axes[j].lo;
    shape[j] = std::max<std::int64_t>(0, axes[j].len);
  }
  return Box(origin, shape);
}

std::size_t Box::size() const {
  std::size_t n = dim() > 0 ? 1 : 0;
  for (int j = 0; j < dim(); ++j) n *= static_cast<std::size_t>(extent(j));
  return n;
}

bool Box::contains(const Box& other) const {
  if (other.dim() != dim()) return false;
  if (other.empty()) return true;
  for (int j = 0; j < dim(); ++j) {
    if (!axis_interval(j).contains(other.axis_interval(j))) return false;
  }
  return true;
}

Box Box::with_axis(int axis, Interval iv) const {
  Box b = *this;
  b.origin_[axis] = iv.lo;
  b.shape_[static_cast<std::size_t>(axis)] = std::max<std::int64_t>(0, iv.len);
  return b;
}

bool Box::operator==(const Box& other) const {
  return origin_ == other.origin_ && shape_ == other.shape_;
}

std::string Box::str() const {
  std::string s = "[";
  for (int j = 0; j < dim(); ++j) {
    if (j) s += " x ";
    s += std::to_string(origin_[j]) + "+" + std::to_string(extent(j));
  }
  return s + "]";
}

Box hull(const Box& a, const Box& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "hull of boxes of different dimension");
  if (a.empty()) return b;
  if (b.empty()) return a;
  std::vector<Interval> axes;
  for (int j = 0; j < a.dim(); ++j) axes.push_back(hull(a.axis_interval(j), b.axis_interval(j)));
  return Box::from_intervals(axes);
}

Box intersect(const Box& a, const Box& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "intersection of boxes of different dimension");
  std::vector<Interval> axes;
  for (int j = 0; j < a.dim(); ++j) axes.push_back(intersect(a.axis_interval(j), b.axis_interval(j)));
  return Box::from_intervals(axes);
}

// ---------------------------------------------------------------------------

GridFunction::GridFunction(int depth, Box box, std::vector<Complex> data, std::string provenance)
    : depth_(depth), box_(std::move(box)), data_(std::move(data)), provenance_(std::move(provenance)) {
  if (depth_ < -40 || depth_ > 40) fail(ErrorKind::InvalidArgument, "grid depth out of range");
  if (box_.dim() < 1) fail(ErrorKind::InvalidArgument, "grid function needs 1 <= d <= 3");
  if (data_.size() != box_.size()) {
    fail(ErrorKind::InvalidArgument, "data length " + std::to_string(data_.size()) +
                                         " does not match box " + box_.str());
  }
  check_finite();
}

GridFunction GridFunction::zeros(int depth, Box box, std::string provenance) {
  const std::size_t n = box.size();
  return GridFunction(depth, std::move(box), std::vector<Complex>(n), std::move(provenance));
}

double GridFunction::step() const { return std::ldexp(1.0, -depth_); }

double GridFunction::cell_volume() const { return std::ldexp(1.0, -depth_ * dim()); }

double GridFunction::coordinate(std::int64_t cell) const {
  return (static_cast<double>(cell) + 0.5) * step();
}

std::array<std::int64_t, kMaxDim> GridFunction::strides() const {
  std::array<std::int64_t, kMaxDim> s{};
  std::int64_t acc = 1;
  for (int j = dim() - 1; j >= 0; --j) {
    s[static_cast<std::size_t>(j)] = acc;
    acc *= box_.extent(j);
  }
  return s;
}

Complex GridFunction::at(const MultiIndex& cell) const {
  if (cell.dim() != dim()) fail(ErrorKind::DimensionMismatch, "cell index " + cell.str());
  const auto s = strides();
  std::int64_t lin = 0;
  for (int j = 0; j < dim(); ++j) {
    const std::int64_t r = cell[j] - box_.origin()[j];
    if (r < 0 || r >= box_.extent(j)) return {};
    lin += r * s[static_cast<std::size_t>(j)];
  }
  return data_[static_cast<std::size_t>(lin)];
}

namespace {

/// Calls fn(offset_in_a, offset_in_b, run_length) for every last-axis row of
/// the intersection of the boxes of a and b.
template <class Fn>
void for_each_common_row(const GridFunction& a, const GridFunction& b, Fn&& fn) {
  const Box common = intersect(a.box(), b.box());
  if (common.empty()) return;
  const int d = common.dim();
  const auto sa = a.strides();
  const auto sb = b.strides();
  const std::int64_t run = common.extent(d - 1);
  std::array<std::int64_t, kMaxDim> idx{};
  while (true) {
    std::int64_t oa = 0;
    std::int64_t ob = 0;
    for (int j = 0; j < d; ++j) {
      const std::int64_t cell = common.origin()[j] + (j == d - 1 ? 0 : idx[static_cast<std::size_t>(j)]);
      oa += (cell - a.box().origin()[j]) * sa[static_cast<std::size_t>(j)];
      ob += (cell - b.box().origin()[j]) * sb[static_cast<std::size_t>(j)];
    }
    fn(oa, ob, run);
    int j = d - 2;
    for (; j >= 0; --j) {
      auto& i = idx[static_cast<std::size_t>(j)];
      if (++i < common.extent(j)) break;
      i = 0;
    }
    if (j < 0) break;
  }
}

void require_compatible(const GridFunction& f, const GridFunction& g) {
  if (f.dim() != g.dim()) fail(ErrorKind::DimensionMismatch, "functions of different dimension");
  if (f.depth() != g.depth()) {
    fail(ErrorKind::DepthMismatch,
         "depths " + std::to_string(f.depth()) + " and " + std::to_string(g.depth()));
  }
}

}  // namespace

GridFunction GridFunction::embedded(const Box& larger) const {
  if (!larger.contains(box_)) fail(ErrorKind::InvalidArgument, "embedding into a smaller box");
  GridFunction out = zeros(depth_, larger, provenance_);
  for_each_common_row(out, *this, [&](std::int64_t oo, std::int64_t oi, std::int64_t run) {
    std::copy_n(data_.begin() + oi, run, out.data_.begin() + oo);
  });
  return out;
}

void GridFunction::add_scaled(const GridFunction& g, Complex weight) {
  require_compatible(*this, g);
  if (!box_.contains(g.box())) {
    fail(ErrorKind::InvalidArgument, "add_scaled: " + g.box().str() + " not inside " + box_.str());
  }
  for_each_common_row(*this, g, [&](std::int64_t oo, std::int64_t oi, std::int64_t run) {
    for (std::int64_t t = 0; t < run; ++t) data_[static_cast<std::size_t>(oo + t)] += weight * g.data_[static_cast<std::size_t>(oi + t)];
  });
}

bool GridFunction::is_real() const {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) { return z.imag() == 0.0; });
}

void GridFunction::check_finite() const {
  for (const auto& z : data_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      fail(ErrorKind::InvalidArgument, "grid function holds a non-finite sample");
    }
  }
}

// ---------------------------------------------------------------------------

Complex inner_product(const GridFunction& f, const GridFunction& g) {
  require_compatible(f, g);
  const auto fv = f.values();
  const auto gv = g.values();
  double re = 0.0;
  double im = 0.0;
  for_each_common_row(f, g, [&](std::int64_t of, std::int64_t og, std::int64_t run) {
    double rr = 0.0;
    double ri = 0.0;
    for (std::int64_t t = 0; t < run; ++t) {
      const Complex a = fv[static_cast<std::size_t>(of + t)];
      const Complex b = gv[static_cast<std::size_t>(og + t)];
      rr += a.real() * b.real() + a.imag() * b.imag();
      ri += a.imag() * b.real() - a.real() * b.imag();
    }
    re += rr;
    im += ri;
  });
  const double vol = f.cell_volume();
  return {re * vol, im * vol};
}

double lp_norm(const GridFunction& f, double p) {
  if (!std::isfinite(p) || !(p > 1.0)) {
    fail(ErrorKind::BadExponent, "lp_norm needs 1 < p < infinity, got " + std::to_string(p));
  }
  if (p == 2.0) return std::sqrt(kernels::sum_norm_omp(f.values()) * f.cell_volume());
  return std::pow(kernels::sum_abs_pow_omp(f.values(), p) * f.cell_volume(), 1.0 / p);
}

double l1_norm(const GridFunction& f) { return kernels::sum_abs_omp(f.values()) * f.cell_volume(); }

double sup_norm(const GridFunction& f) {
  double m = 0.0;
  for (const auto& z : f.values()) m = std::max(m, std::abs(z));
  return m;
}

GridFunction difference(const GridFunction& f, const GridFunction& g) {
  require_compatible(f, g);
  GridFunction out = f.embedded(hull(f.box(), g.box()));
  out.add_scaled(g, -1.0);
  return out;
}

GridFunction scaled(const GridFunction& f, Complex factor) {
  std::vector<Complex> data(f.values().begin(), f.values().end());
  for (auto& z : data) z *= factor;
  return GridFunction(f.depth(), f.box(), std::move(data), f.provenance());
}

GridFunction dilate(const GridFunction& f, int k) {
  if (std::abs(k) > f.depth() - 2) {
    fail(ErrorKind::ResolutionExhausted, "dilation by 2^" + std::to_string(k) + " at depth " +
                                             std::to_string(f.depth()) + " (need |k| <= depth - 2)");
  }
  std::vector<Complex> data(f.values().begin(), f.values().end());
  return GridFunction(f.depth() + k, f.box(), std::move(data), f.provenance());
}

std::vector<GridFunction> axis_slices(const GridFunction& f, int axis) {
  if (axis < 0 || axis >= f.dim()) {
    fail(ErrorKind::AxisOutOfRange, "axis " + std::to_string(axis) + " of a " +
                                        std::to_string(f.dim()) + "-d function");
  }
  const Interval iv = f.box().axis_interval(axis);
  std::int64_t inner = 1;
  for (int j = axis + 1; j < f.dim(); ++j) inner *= f.box().extent(j);
  const std::int64_t lines = iv.len == 0 ? 0 : static_cast<std::int64_t>(f.size()) / iv.len;
  const Box line_box(MultiIndex{iv.lo}, {iv.len, 0, 0});
  std::vector<GridFunction> out;
  out.reserve(static_cast<std::size_t>(lines));
  const auto src = f.values();
  for (std::int64_t line = 0; line < lines; ++line) {
    const std::int64_t base = (line / inner) * iv.len * inner + line % inner;
    std::vector<Complex> data(static_cast<std::size_t>(iv.len));
    for (std::int64_t t = 0; t < iv.len; ++t) data[static_cast<std::size_t>(t)] = src[static_cast<std::size_t>(base + t * inner)];
    out.emplace_back(f.depth(), line_box, std::move(data), f.provenance());
  }
  return out;
}

GridFunction reassemble(const std::vector<GridFunction>& slices, int depth, const Box& box, int axis) {
  if (axis < 0 || axis >= box.dim()) fail(ErrorKind::AxisOutOfRange, "reassemble axis");
  const Interval iv = box.axis_interval(axis);
  std::int64_t inner = 1;
  for (int j = axis + 1; j < box.dim(); ++j) inner *= box.extent(j);
  const std::int64_t lines = iv.len == 0 ? 0 : static_cast<std::int64_t>(box.size()) / iv.len;
  if (static_cast<std::int64_t>(slices.size()) != lines) {
    fail(ErrorKind::InvalidArgument, "slice count does not match the box");
  }
  GridFunction out = GridFunction::zeros(depth, box);
  auto dst = out.values();
  for (std::int64_t line = 0; line < lines; ++line) {
    const auto& s = slices[static_cast<std::size_t>(line)];
    if (s.dim() != 1 || !(s.box().axis_interval(0) == iv) || s.depth() != depth) {
      fail(ErrorKind::InvalidArgument, "slice does not match the reassembly box");
    }
    const std::int64_t base = (line / inner) * iv.len * inner + line % inner;
    const auto v = s.values();
    for (std::int64_t t = 0; t < iv.len; ++t) dst[static_cast<std::size_t>(base + t * inner)] = v[static_cast<std::size_t>(t)];
  }
  if (!slices.empty()) out.set_provenance(slices.front().provenance());
  return out;
}

}  // namespace mrlp
