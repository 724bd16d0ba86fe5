#include <omp.h>

#include <algorithm>
#include <vector>

#include "line_layout.hpp"
#include "mrlp/kernels.hpp"

namespace mrlp::kernels {

namespace {

// Lines adjacent in the inner index are handled together so strided axes are
// read and written in short contiguous runs instead of one element per row.
constexpr std::int64_t kTile = 16;

}  // namespace

GridFunction apply_lines_omp(const GridFunction& f, int axis, const LineTransform& op) {
  const LineLayout layout = LineLayout::make(f, axis, op);
  GridFunction out = GridFunction::zeros(f.depth(), layout.out_box);
  if (layout.lines == 0 || layout.out_len == 0) return out;

  const auto src = f.values();
  auto dst = out.values();
  const std::int64_t inner = layout.inner;
  const std::int64_t tiles_per_outer = (inner + kTile - 1) / kTile;
  const std::int64_t outer = layout.lines / inner;
  const std::int64_t tiles = outer * tiles_per_outer;
  const auto in_len = static_cast<std::size_t>(layout.in_len);
  const auto out_len = static_cast<std::size_t>(layout.out_len);
#pragma omp parallel
  {
    std::vector<Complex> in_buf(in_len * kTile);
    std::vector<Complex> out_buf(out_len * kTile);
#pragma omp for schedule(static)
    for (std::int64_t tile = 0; tile < tiles; ++tile) {
      const std::int64_t o = tile / tiles_per_outer;
      const std::int64_t i0 = (tile % tiles_per_outer) * kTile;
      const std::int64_t w = std::min(kTile, inner - i0);
      const std::int64_t in_base = o * layout.in_len * inner + i0;
      for (std::int64_t t = 0; t < layout.in_len; ++t) {
        const Complex* row = &src[static_cast<std::size_t>(in_base + t * inner)];
        for (std::int64_t b = 0; b < w; ++b) {
          in_buf[static_cast<std::size_t>(b) * in_len + static_cast<std::size_t>(t)] = row[b];
        }
      }
      std::fill(out_buf.begin(), out_buf.begin() + w * layout.out_len, Complex{});
      for (std::int64_t b = 0; b < w; ++b) {
        op.apply(std::span<const Complex>(in_buf).subspan(static_cast<std::size_t>(b) * in_len, in_len),
                 layout.in_iv,
                 std::span<Complex>(out_buf).subspan(static_cast<std::size_t>(b) * out_len, out_len),
                 layout.out_iv);
      }
      const std::int64_t out_base = o * layout.out_len * inner + i0;
      for (std::int64_t t = 0; t < layout.out_len; ++t) {
        Complex* row = &dst[static_cast<std::size_t>(out_base + t * inner)];
        for (std::int64_t b = 0; b < w; ++b) {
          row[b] = out_buf[static_cast<std::size_t>(b) * out_len + static_cast<std::size_t>(t)];
        }
      }
    }
  }
  return out;
}

}  // namespace mrlp::kernels
