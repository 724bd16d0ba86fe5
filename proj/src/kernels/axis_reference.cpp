#include <algorithm>
#include <vector>

#include "line_layout.hpp"
#include "mrlp/error.hpp"
#include "mrlp/kernels.hpp"

namespace mrlp::kernels {

GridFunction apply_lines_reference(const GridFunction& f, int axis, const LineTransform& op) {
  const LineLayout layout = LineLayout::make(f, axis, op);
  GridFunction out = GridFunction::zeros(f.depth(), layout.out_box);
  if (layout.lines == 0 || layout.out_len == 0) return out;

  std::vector<Complex> in_buf(static_cast<std::size_t>(layout.in_len));
  std::vector<Complex> out_buf(static_cast<std::size_t>(layout.out_len));
  const auto src = f.values();
  auto dst = out.values();
  for (std::int64_t line = 0; line < layout.lines; ++line) {
    layout.gather(src, line, in_buf);
    std::fill(out_buf.begin(), out_buf.end(), Complex{});
    op.apply(in_buf, layout.in_iv, out_buf, layout.out_iv);
    layout.scatter(out_buf, line, dst);
  }
  return out;
}

GridFunction apply_lines(const GridFunction& f, int axis, const LineTransform& op, Exec exec) {
  return exec == Exec::parallel ? apply_lines_omp(f, axis, op) : apply_lines_reference(f, axis, op);
}

}  // namespace mrlp::kernels
