#include "mrlp/mrand.hpp"

#include "mrlp/error.hpp"

namespace mrlp {

GridFunction apply_axis(const AxisOperator& op, const GridFunction& f, kernels::Exec exec) {
  if (!op.base) fail(ErrorKind::InvalidArgument, "axis operator without a base transform");
  return kernels::apply_lines(f, op.axis, *op.base, exec);
}

GridFunction apply_axis_by_slices(const AxisOperator& op, const GridFunction& f) {
  if (!op.base) fail(ErrorKind::InvalidArgument, "axis operator without a base transform");
  const auto slices = axis_slices(f, op.axis);
  const Interval in_iv = f.box().axis_interval(op.axis);
  const Interval out_iv = op.base->output_interval(in_iv);
  const Box out_line(MultiIndex{out_iv.lo}, {out_iv.len, 0, 0});
  std::vector<GridFunction> mapped;
  mapped.reserve(slices.size());
  for (const auto& s : slices) {
    GridFunction g = GridFunction::zeros(f.depth(), out_line);
    op.base->apply(s.values(), in_iv, g.values(), out_iv);
    mapped.push_back(std::move(g));
  }
  return reassemble(mapped, f.depth(), f.box().with_axis(op.axis, out_iv), op.axis);
}

// ---------------------------------------------------------------------------

TensorBanks::TensorBanks(std::vector<FilterBank> banks, int grid_depth) : depth_(grid_depth) {
  if (banks.empty() || banks.size() > static_cast<std::size_t>(kMaxDim)) {
    fail(ErrorKind::DimensionMismatch, "tensor assignment needs 1..3 banks");
  }
  for (auto& b : banks) axes_.push_back(std::make_shared<const Mra1d>(std::move(b), grid_depth));
}

TensorBanks::TensorBanks(const FilterBank& bank, int dim, int grid_depth) : depth_(grid_depth) {
  if (dim < 1 || dim > kMaxDim) fail(ErrorKind::DimensionMismatch, "tensor assignment needs 1 <= d <= 3");
  auto mra = std::make_shared<const Mra1d>(bank, grid_depth);
  axes_.assign(static_cast<std::size_t>(dim), mra);
}

std::string TensorBanks::label() const {
  std::string s;
  for (const auto& a : axes_) s += (s.empty() ? "" : "*") + a->bank().id;
  return s;
}

TensorBanks TensorBanks::role_swapped() const {
  TensorBanks t;
  t.depth_ = depth_;
  t.exec = exec;
  for (const auto& a : axes_) t.axes_.push_back(a->role_swapped());
  return t;
}

namespace {

void check_dims(const GridFunction& f, const MultiIndex& kappa, const TensorBanks& banks) {
  if (f.dim() != banks.dim() || kappa.dim() != banks.dim()) {
    fail(ErrorKind::DimensionMismatch, "function, level and bank dimensions differ");
  }
  if (f.depth() != banks.grid_depth()) fail(ErrorKind::DepthMismatch, "function depth differs from bank depth");
  if (!kappa.is_nonnegative()) fail(ErrorKind::InvalidArgument, "negative level " + kappa.str());
}

GridFunction axis_apply(const GridFunction& f, int axis, const LevelCombination& op,
                        kernels::Exec exec) {
  return kernels::apply_lines(f, axis, op, exec);
}

}  // namespace

GridFunction apply_separable(const GridFunction& f, const TensorBanks& banks,
                             const std::function<LevelCombination(int axis)>& per_axis) {
  if (f.dim() != banks.dim()) fail(ErrorKind::DimensionMismatch, "function and bank dimensions differ");
  GridFunction g = axis_apply(f, 0, per_axis(0), banks.exec);
  for (int j = 1; j < f.dim(); ++j) g = axis_apply(g, j, per_axis(j), banks.exec);
  return g;
}

GridFunction project_nd(const GridFunction& f, const MultiIndex& kappa, const TensorBanks& banks) {
  check_dims(f, kappa, banks);
  return apply_separable(f, banks, [&](int j) {
    return LevelCombination::projector(banks.axis(j), static_cast<int>(kappa[j]));
  });
}

GridFunction mixed_detail(const GridFunction& f, const MultiIndex& kappa, const TensorBanks& banks) {
  check_dims(f, kappa, banks);
  return apply_separable(f, banks, [&](int j) {
    return LevelCombination::detail(banks.axis(j), static_cast<int>(kappa[j]));
  });
}

GridFunction mixed_detail_inclusion_exclusion(const GridFunction& f, const MultiIndex& kappa,
                                              const TensorBanks& banks) {
  check_dims(f, kappa, banks);
  std::vector<std::pair<int, GridFunction>> terms;
  Box box;
  for (const auto& eps : BinaryPattern::all(f.dim())) {
    if (!eps.support_within(kappa)) continue;
    GridFunction t = project_nd(f, kappa - eps.as_index(), banks);
    box = terms.empty() ? t.box() : hull(box, t.box());
    terms.emplace_back(eps.sign(), std::move(t));
  }
  GridFunction out = GridFunction::zeros(f.depth(), box, f.provenance());
  for (const auto& [sign, t] : terms) out.add_scaled(t, static_cast<double>(sign));
  return out;
}

Box block_hull(const Box& in, const MultiIndex& k, const TensorBanks& banks) {
  Box out = in;
  for (int j = 0; j < in.dim(); ++j) {
    const Interval iv = in.axis_interval(j);
    Interval h{iv.lo, 0};
    for (int level = 0; level <= k[j]; ++level) {
      h = hull(h, LevelCombination::projector(banks.axis(j), level).output_interval(iv));
    }
    out = out.with_axis(j, h);
  }
  return out;
}

void for_each_block(const GridFunction& f, const MultiIndex& k, const TensorBanks& banks,
                    const std::function<void(const MultiIndex&, const GridFunction&)>& visit) {
  check_dims(f, k, banks);
  MultiIndex kappa(f.dim());
  std::function<void(const GridFunction&, int)> rec = [&](const GridFunction& g, int axis) {
    if (axis == f.dim()) {
      visit(kappa, g);
      return;
    }
    for (int level = 0; level <= k[axis]; ++level) {
      kappa[axis] = level;
      const GridFunction h =
          axis_apply(g, axis, LevelCombination::detail(banks.axis(axis), level), banks.exec);
      rec(h, axis + 1);
    }
  };
  rec(f, 0);
}

GridFunction partial_sum(const GridFunction& f, const MultiIndex& k, const TensorBanks& banks) {
  GridFunction out = GridFunction::zeros(f.depth(), block_hull(f.box(), k, banks), f.provenance());
  for_each_block(f, k, banks, [&](const MultiIndex&, const GridFunction& block) {
    out.add_scaled(block, 1.0);
  });
  return out;
}

}  // namespace mrlp
