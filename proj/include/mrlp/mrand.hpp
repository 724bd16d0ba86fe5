#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "mrlp/grid_function.hpp"
#include "mrlp/kernels.hpp"
#include "mrlp/mra1d.hpp"
#include "mrlp/multi_index.hpp"

namespace mrlp {

/// A 1-D line transform lifted to act along one axis (0-based) of a d-dim
/// function, slice by slice.
struct AxisOperator {
  int axis = 0;
  std::shared_ptr<const LineTransform> base;
};

GridFunction apply_axis(const AxisOperator& op, const GridFunction& f,
                        kernels::Exec exec = kernels::Exec::parallel);

/// Reference path for apply_axis: literally slices f with axis_slices, runs
/// the base transform on every slice and reassembles. Slow; used to check the
/// strided kernels.
GridFunction apply_axis_by_slices(const AxisOperator& op, const GridFunction& f);

/// One accepted bank per axis, all sharing the grid depth.
class TensorBanks {
 public:
  TensorBanks(std::vector<FilterBank> banks, int grid_depth);
  /// Same bank on every axis.
  TensorBanks(const FilterBank& bank, int dim, int grid_depth);

  int dim() const { return static_cast<int>(axes_.size()); }
  int grid_depth() const { return depth_; }
  int max_level() const { return depth_ - Mra1d::kLevelHeadroom; }
  const std::shared_ptr<const Mra1d>& axis(int j) const { return axes_[static_cast<std::size_t>(j)]; }
  std::string label() const;  // e.g. "db2*db3"

  /// The same assignment with phi and phi* exchanged on every axis.
  TensorBanks role_swapped() const;

  kernels::Exec exec = kernels::Exec::parallel;

 private:
  TensorBanks() = default;
  std::vector<std::shared_ptr<const Mra1d>> axes_;
  int depth_ = 0;
};

/// Applies one line transform per axis, j = 0 .. d-1 in order.
GridFunction apply_separable(const GridFunction& f, const TensorBanks& banks,
                             const std::function<LevelCombination(int axis)>& per_axis);

/// E_kappa = prod_j V_j(E_{kappa_j}).
GridFunction project_nd(const GridFunction& f, const MultiIndex& kappa, const TensorBanks& banks);

/// Mixed difference as the product of 1-D details prod_j V_j(D_{kappa_j}).
GridFunction mixed_detail(const GridFunction& f, const MultiIndex& kappa, const TensorBanks& banks);

/// Mixed difference by inclusion-exclusion:
/// sum over epsilon in {0,1}^d with s(epsilon) in s(kappa) of (-1)^|epsilon| E_{kappa - epsilon}.
GridFunction mixed_detail_inclusion_exclusion(const GridFunction& f, const MultiIndex& kappa,
                                              const TensorBanks& banks);

/// sum_{kappa <= k} mixed_detail(f, kappa).
GridFunction partial_sum(const GridFunction& f, const MultiIndex& k, const TensorBanks& banks);

/// Calls visit(kappa, block) for every kappa in Z_+^d(k), reusing partial
/// per-axis results; blocks arrive in lexicographic order.
void for_each_block(const GridFunction& f, const MultiIndex& k, const TensorBanks& banks,
                    const std::function<void(const MultiIndex&, const GridFunction&)>& visit);

/// Box that contains every block for kappa <= k (per-axis hull over levels).
Box block_hull(const Box& in, const MultiIndex& k, const TensorBanks& banks);

}  // namespace mrlp
