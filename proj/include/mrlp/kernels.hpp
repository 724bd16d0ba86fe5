#pragma once

#include <span>

#include "mrlp/grid_function.hpp"

namespace mrlp {

/// A linear map on 1-D grid lines whose output support depends only on the
/// input support (never on the data).
class LineTransform {
 public:
  virtual ~LineTransform() = default;

  virtual Interval output_interval(Interval in) const = 0;

  /// `out` arrives zero-filled with out_box.len == output_interval(in_box).len.
  virtual void apply(std::span<const Complex> in, Interval in_box, std::span<Complex> out,
                     Interval out_box) const = 0;
};

namespace kernels {

enum class Exec { reference, parallel };

/// Applies `op` to every line of `f` along `axis`. The reference version is a
/// plain loop; the OpenMP version splits lines across threads. Each line is
/// computed identically in both, so results agree bit for bit.
GridFunction apply_lines_reference(const GridFunction& f, int axis, const LineTransform& op);
GridFunction apply_lines_omp(const GridFunction& f, int axis, const LineTransform& op);
GridFunction apply_lines(const GridFunction& f, int axis, const LineTransform& op, Exec exec);

// Reductions. The OpenMP variants sum fixed-size chunks and then combine the
// chunk sums in order, so their result does not depend on the thread count.
double sum_abs_pow_reference(std::span<const Complex> v, double p);
double sum_abs_pow_omp(std::span<const Complex> v, double p);
double sum_abs_reference(std::span<const Complex> v);
double sum_abs_omp(std::span<const Complex> v);
double sum_norm_reference(std::span<const Complex> v);  // sum |z|^2
double sum_norm_omp(std::span<const Complex> v);

inline constexpr std::size_t kReductionChunk = 1 << 14;

}  // namespace kernels
}  // namespace mrlp
