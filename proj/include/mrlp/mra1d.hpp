#pragma once

#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mrlp/grid_function.hpp"
#include "mrlp/kernels.hpp"
#include "mrlp/refinable.hpp"

namespace mrlp {

/// c_nu at one level, stored densely over the contiguous shift window
/// first .. first + values.size() - 1 implied by the supports.
struct LevelCoefficients {
  int level = 0;
  int grid_depth = 0;
  std::string filter_id;
  std::int64_t first = 0;
  std::vector<Complex> values;

  std::int64_t last() const { return first + static_cast<std::int64_t>(values.size()) - 1; }
  std::size_t size() const { return values.size(); }
  /// Zero outside the window.
  Complex at(std::int64_t nu) const;
};

/// Rows (kappa, nu, re, im) with a header.
void write_coefficients_csv(std::ostream& out, std::span<const LevelCoefficients> levels);

/// The 1-D projectors E_kappa f = sum_nu 2^kappa <f, phi*(2^kappa . - nu)> phi(2^kappa . - nu)
/// on grid functions of a fixed depth J, for levels 0 .. J - 4.
class Mra1d {
 public:
  /// Throws BankRejected when the biorthogonality residual exceeds
  /// kBankAcceptance, ResolutionExhausted when J < 4.
  Mra1d(FilterBank bank, int grid_depth);

  const FilterBank& bank() const { return bank_; }
  int grid_depth() const { return depth_; }
  int max_level() const { return depth_ - kLevelHeadroom; }

  LevelCoefficients analyze(const GridFunction& f, int kappa) const;
  GridFunction synthesize(const LevelCoefficients& c) const;
  GridFunction project(const GridFunction& f, int kappa) const;
  /// E_kappa f - E_{kappa-1} f with E_{-1} = 0.
  GridFunction detail(const GridFunction& f, int kappa) const;

  /// Shifts nu whose dual support meets the cells `cells` at level kappa.
  Interval coefficient_window(Interval cells, int kappa) const;
  /// Cells covered by sum_{nu in window} c_nu phi(2^kappa . - nu).
  Interval synthesis_interval(Interval window, int kappa) const;

  /// Line-level kernels on raw spans (used by the tensor code).
  void analyze_line(std::span<const Complex> in, Interval in_box, int kappa, Interval window,
                    std::span<Complex> coeffs) const;
  void synthesize_line(std::span<const Complex> coeffs, Interval window, int kappa, Complex weight,
                       std::span<Complex> out, Interval out_box) const;

  /// The same operator with phi and phi* exchanged. Only the self-adjointness
  /// checks use it; for orthonormal banks it coincides with *this.
  std::shared_ptr<const Mra1d> role_swapped() const;

  static constexpr int kLevelHeadroom = 4;

 private:
  void check_level(int kappa) const;
  void check_input(const GridFunction& f) const;

  FilterBank bank_;
  int depth_;
  // Midpoint samples of phi and phi* at scale s = J - kappa, indexed by kappa.
  std::vector<std::vector<double>> primal_;
  std::vector<std::vector<double>> dual_;
};

/// sum_k w_k E_k as a line transform.
class LevelCombination : public LineTransform {
 public:
  struct Term {
    int level;
    Complex weight;
  };

  LevelCombination(std::shared_ptr<const Mra1d> mra, std::vector<Term> terms);

  static LevelCombination projector(std::shared_ptr<const Mra1d> mra, int kappa);
  static LevelCombination detail(std::shared_ptr<const Mra1d> mra, int kappa);
  /// sum_{k <= K} sigma_k D_k = sum_k (sigma_k - sigma_{k+1}) E_k, sigma_{K+1} = 0.
  static LevelCombination signs(std::shared_ptr<const Mra1d> mra, std::span<const int> sigma);

  const std::vector<Term>& terms() const { return terms_; }
  const Mra1d& mra() const { return *mra_; }

  Interval output_interval(Interval in) const override;
  void apply(std::span<const Complex> in, Interval in_box, std::span<Complex> out,
             Interval out_box) const override;

 private:
  std::shared_ptr<const Mra1d> mra_;
  std::vector<Term> terms_;
};

}  // namespace mrlp
