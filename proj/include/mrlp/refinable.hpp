#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mrlp {

/// Finite filter {h_n : n = first .. first + taps.size() - 1}.
struct Mask {
  std::int64_t first = 0;
  std::vector<double> taps;

  std::int64_t last() const { return first + static_cast<std::int64_t>(taps.size()) - 1; }
  double at(std::int64_t n) const {
    return (n < first || n > last()) ? 0.0 : taps[static_cast<std::size_t>(n - first)];
  }
  double sum() const;
};

/// Closed support [lo, hi] with integer endpoints.
struct Support {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  std::int64_t length() const { return hi - lo; }
};

enum class Which { primal, dual };
const char* to_string(Which w);

/// Refinement masks of phi and its dual phi*.
struct FilterBank {
  std::string id;
  Mask primal;
  Mask dual;
  Support primal_support;
  Support dual_support;
  /// phi* is continuously differentiable.
  bool smooth_dual = false;

  const Mask& mask(Which w) const { return w == Which::primal ? primal : dual; }
  Support support(Which w) const { return w == Which::primal ? primal_support : dual_support; }
  bool self_dual() const;

  /// Throws InvalidBank naming the violated invariant.
  void validate() const;
  /// Stable 64-bit hash of the numeric content (ids excluded).
  std::uint64_t content_hash() const;

  /// Orthonormal bank with dual = primal; support is [first, last].
  static FilterBank orthonormal(std::string id, std::int64_t first, std::vector<double> taps,
                                bool smooth);
};

/// phi(n) on the left-closed integer nodes lo .. hi - 1 (phi(hi) = 0).
struct IntegerValues {
  std::int64_t first = 0;
  std::vector<double> values;

  double at(std::int64_t n) const {
    const auto i = n - first;
    return (i < 0 || i >= static_cast<std::int64_t>(values.size()))
               ? 0.0
               : values[static_cast<std::size_t>(i)];
  }
};

/// Eigenvector of the integer refinement matrix for eigenvalue 1, scaled so
/// that the values sum to 1.
IntegerValues integer_values(const FilterBank& bank, Which which);

/// phi (and optionally phi') at x = lo + i 2^-depth, i = 0 .. length*2^depth.
class DyadicTable {
 public:
  DyadicTable() = default;
  DyadicTable(std::string filter_id, Which which, int depth, Support support,
              std::vector<double> values, std::optional<std::vector<double>> derivatives);

  const std::string& filter_id() const { return filter_id_; }
  Which which() const { return which_; }
  int depth() const { return depth_; }
  Support support() const { return support_; }
  const std::vector<double>& values() const { return values_; }
  const std::optional<std::vector<double>>& derivatives() const { return derivatives_; }
  std::uint64_t checksum() const { return checksum_; }
  static std::uint64_t compute_checksum(const std::vector<double>& values,
                                        const std::optional<std::vector<double>>& derivatives);

  /// phi(k 2^-depth); zero off the support.
  double value_at(std::int64_t k) const;
  /// phi(k 2^-level) for level <= depth.
  double value_at_dyadic(std::int64_t k, int level) const;

  /// phi((t + 1/2) 2^-s) for t = 0 .. length*2^s - 1; needs s < depth.
  std::vector<double> midpoint_samples(int s) const;

  /// max |phi(x) - sqrt2 sum h_n phi(2x - n)| over the table grid.
  double refinement_residual(const Mask& mask) const;
  /// max |sum_nu phi(x - nu) - 1| over the table grid.
  double partition_of_unity_residual() const;

 private:
  std::string filter_id_;
  Which which_ = Which::primal;
  int depth_ = 0;
  Support support_;
  std::vector<double> values_;
  std::optional<std::vector<double>> derivatives_;
  std::uint64_t checksum_ = 0;
};

inline constexpr int kMaxCascadeDepth = 24;

/// Dyadic subdivision seeded by integer_values. Derivatives are included when
/// the bank's smoothness flag is set.
DyadicTable cascade(const FilterBank& bank, Which which, int depth);

/// G[i][j] = integral phi(x - nu_i) phi(x - nu_j) dx for nu = lo .. hi,
/// midpoint quadrature at `depth` (>= 12).
Eigen::MatrixXd shift_gram(const FilterBank& bank, Which which, std::int64_t lo,
                           std::int64_t hi, int depth = 12);

/// max over shifts k of |integral phi(x) phi*(x - k) dx - delta_k|.
double biorthogonality_residual(const FilterBank& bank, int depth = 12);

/// Banks with a larger residual are refused by the projectors.
inline constexpr double kBankAcceptance = 1e-6;

}  // namespace mrlp
