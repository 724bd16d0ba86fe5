#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "mrlp/grid_function.hpp"
#include "mrlp/mrand.hpp"
#include "mrlp/multi_index.hpp"

namespace mrlp {

/// Product-form signs sigma_kappa = prod_j sigma^j_{kappa_j}, kappa <= K e.
class SignPattern {
 public:
  /// One sequence of +-1 per axis, all of length K + 1.
  explicit SignPattern(std::vector<std::vector<int>> per_axis);

  static SignPattern all_plus(int dim, int K);
  /// Independent fair signs from a seeded 64-bit Mersenne twister.
  static SignPattern random(int dim, int K, std::uint64_t seed);
  /// Factors a full table kappa -> sigma_kappa over Z_+^d(K e); throws
  /// NonProductPattern when no product form reproduces it.
  static SignPattern from_table(int dim, int K, const std::map<MultiIndex, int>& table);

  int dim() const { return static_cast<int>(axes_.size()); }
  int levels() const { return static_cast<int>(axes_.front().size()) - 1; }  // K
  const std::vector<int>& axis(int j) const { return axes_[static_cast<std::size_t>(j)]; }
  int sign(const MultiIndex& kappa) const;

 private:
  std::vector<std::vector<int>> axes_;
};

/// S_K f = (sum_{kappa <= K e} |E_kappa f|^2)^(1/2), computed block by block.
GridFunction square_function(const GridFunction& f, int K, const TensorBanks& banks);

/// T_sigma f = sum_kappa sigma_kappa E_kappa f. For product patterns this is
/// prod_j V_j(sum_k sigma^j_k D_k), which is how it is evaluated.
GridFunction sign_operator(const GridFunction& f, const SignPattern& sigma, const TensorBanks& banks);

/// omega_kappa(t) = prod_j sign sin(2^(kappa_j + 1) pi t_j); throws
/// BreakpointHit when some t_j 2^(kappa_j + 1) is an integer, InvalidArgument
/// when t is outside the open unit cube.
int rademacher(const MultiIndex& kappa, std::span<const double> t);

/// Coefficients a_kappa over Z_+^d(k), lexicographic order.
struct RademacherFamily {
  MultiIndex k;
  std::vector<double> a;

  std::size_t size() const { return a.size(); }
  double l2() const;
};

struct KhintchineResult {
  bool exact = true;
  double p = 2.0;
  double moment = 0.0;     // E |sum a_kappa omega_kappa|^p
  double std_error = 0.0;  // of `moment` (Monte Carlo only)
  std::uint64_t samples = 0;
  double lp_norm = 0.0;
  double l2_norm = 0.0;
  double ratio = 0.0;  // lp_norm / l2_norm
  double lower_bound = 0.0;  // A_p^d
  double upper_bound = 0.0;  // B_p^d
  bool lower_ok = false;
  bool upper_ok = false;
};

inline constexpr std::size_t kKhintchineExactLimit = 16;

/// Best constants in A_p ||a||_2 <= ||sum a_i r_i||_p <= B_p ||a||_2.
double khintchine_lower(double p);
double khintchine_upper(double p);

/// Exact L_p(I^d) norm by enumerating every sign assignment of the
/// independent per-axis sequences. TooManyTerms above kKhintchineExactLimit.
KhintchineResult khintchine_exact(const RademacherFamily& family, double p);

/// Monte Carlo over uniform t in I^d, evaluating omega with `rademacher`.
KhintchineResult khintchine_monte_carlo(const RademacherFamily& family, double p,
                                        std::uint64_t samples, std::uint64_t seed);

/// Exact when small enough, Monte Carlo otherwise.
KhintchineResult khintchine_check(const RademacherFamily& family, double p,
                                  std::uint64_t mc_samples = 200000, std::uint64_t seed = 1);

}  // namespace mrlp
