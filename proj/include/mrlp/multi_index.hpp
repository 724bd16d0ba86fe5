#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace mrlp {

inline constexpr int kMaxDim = 3;

/// Integer d-tuple, d <= kMaxDim. Used both for levels (non-negative, the
/// kappa of Z_+^d) and for shifts / cell indices (signed).
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(int dim, std::int64_t fill = 0);
  MultiIndex(std::initializer_list<std::int64_t> values);
  static MultiIndex from(const std::vector<std::int64_t>& values);

  /// The all-ones vector e = (1, ..., 1).
  static MultiIndex ones(int dim) { return MultiIndex(dim, 1); }

  int dim() const { return dim_; }
  std::int64_t operator[](int j) const { return c_[static_cast<std::size_t>(j)]; }
  std::int64_t& operator[](int j) { return c_[static_cast<std::size_t>(j)]; }

  std::int64_t min_component() const;  // m(kappa)
  std::int64_t max_component() const;  // M(kappa)
  bool is_nonnegative() const;
  /// Componentwise <=; `a.leq(k)` is membership of a in Z_+^d(k) when a >= 0.
  bool leq(const MultiIndex& other) const;

  MultiIndex operator+(const MultiIndex& other) const;
  MultiIndex operator-(const MultiIndex& other) const;
  MultiIndex scaled(std::int64_t factor) const;
  bool operator==(const MultiIndex& other) const;
  bool operator!=(const MultiIndex& other) const { return !(*this == other); }
  bool operator<(const MultiIndex& other) const;  // lexicographic

  std::string str() const;

 private:
  std::array<std::int64_t, kMaxDim> c_{};
  int dim_ = 0;
};

/// Z_+^d(k) in lexicographic order (last component fastest).
std::vector<MultiIndex> box_indices(const MultiIndex& k);

/// Element epsilon of Upsilon^d = {0,1}^d stored as a bit mask (bit j = epsilon_j).
class BinaryPattern {
 public:
  BinaryPattern(int dim, unsigned bits);

  int dim() const { return dim_; }
  unsigned bits() const { return bits_; }
  int component(int j) const { return static_cast<int>((bits_ >> j) & 1U); }
  /// s(epsilon) as a bit mask.
  unsigned support() const { return bits_; }
  /// (-e)^epsilon = (-1)^{sum epsilon_j}.
  int sign() const;
  /// s(epsilon) is a subset of s(kappa).
  bool support_within(const MultiIndex& kappa) const;
  MultiIndex as_index() const;

  static std::vector<BinaryPattern> all(int dim);

 private:
  int dim_;
  unsigned bits_;
};

/// Bit mask of s(x) = { j : x_j != 0 }.
unsigned support_set(const MultiIndex& x);

}  // namespace mrlp
