#pragma once

#include <span>

#include "mrlp/error.hpp"
#include "mrlp/kernels.hpp"

namespace mrlp::kernels {

/// Index bookkeeping shared by the line kernels: a d-dim array is viewed as
/// `outer x axis x inner` with the axis strided by `inner`.
struct LineLayout {
  Interval in_iv;
  Interval out_iv;
  Box out_box;
  std::int64_t in_len = 0;
  std::int64_t out_len = 0;
  std::int64_t inner = 1;
  std::int64_t lines = 0;

  static LineLayout make(const GridFunction& f, int axis, const LineTransform& op) {
    if (axis < 0 || axis >= f.dim()) {
      fail(ErrorKind::AxisOutOfRange,
           "axis " + std::to_string(axis) + " for a " + std::to_string(f.dim()) + "-d function");
    }
    LineLayout l;
    l.in_iv = f.box().axis_interval(axis);
    l.out_iv = l.in_iv.empty() ? Interval{l.in_iv.lo, 0} : op.output_interval(l.in_iv);
    if (l.out_iv.len < 0) l.out_iv.len = 0;
    l.out_box = f.box().with_axis(axis, l.out_iv);
    l.in_len = l.in_iv.len;
    l.out_len = l.out_iv.len;
    for (int j = axis + 1; j < f.dim(); ++j) l.inner *= f.box().extent(j);
    l.lines = l.in_len == 0 ? 0 : static_cast<std::int64_t>(f.size()) / l.in_len;
    return l;
  }

  void gather(std::span<const Complex> src, std::int64_t line, std::span<Complex> buf) const {
    const std::int64_t o = line / inner;
    const std::int64_t i = line % inner;
    const std::int64_t base = o * in_len * inner + i;
    for (std::int64_t t = 0; t < in_len; ++t) {
      buf[static_cast<std::size_t>(t)] = src[static_cast<std::size_t>(base + t * inner)];
    }
  }

  void scatter(std::span<const Complex> buf, std::int64_t line, std::span<Complex> dst) const {
    const std::int64_t o = line / inner;
    const std::int64_t i = line % inner;
    const std::int64_t base = o * out_len * inner + i;
    for (std::int64_t t = 0; t < out_len; ++t) {
      dst[static_cast<std::size_t>(base + t * inner)] = buf[static_cast<std::size_t>(t)];
    }
  }
};

}  // namespace mrlp::kernels
