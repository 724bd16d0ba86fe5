#include "mrlp/multi_index.hpp"

#include <algorithm>

#include "mrlp/error.hpp"

namespace mrlp {

MultiIndex::MultiIndex(int dim, std::int64_t fill) : dim_(dim) {
  if (dim < 0 || dim > kMaxDim) {
    fail(ErrorKind::InvalidArgument, "dimension " + std::to_string(dim) + " outside 0..3");
  }
  for (int j = 0; j < dim; ++j) c_[static_cast<std::size_t>(j)] = fill;
}

MultiIndex::MultiIndex(std::initializer_list<std::int64_t> values)
    : MultiIndex(static_cast<int>(values.size())) {
  std::copy(values.begin(), values.end(), c_.begin());
}

MultiIndex MultiIndex::from(const std::vector<std::int64_t>& values) {
  MultiIndex m(static_cast<int>(values.size()));
  std::copy(values.begin(), values.end(), m.c_.begin());
  return m;
}

std::int64_t MultiIndex::min_component() const {
  if (dim_ == 0) fail(ErrorKind::InvalidArgument, "min of an empty multi-index");
  return *std::min_element(c_.begin(), c_.begin() + dim_);
}

std::int64_t MultiIndex::max_component() const {
  if (dim_ == 0) fail(ErrorKind::InvalidArgument, "max of an empty multi-index");
  return *std::max_element(c_.begin(), c_.begin() + dim_);
}

bool MultiIndex::is_nonnegative() const {
  return std::all_of(c_.begin(), c_.begin() + dim_, [](std::int64_t v) { return v >= 0; });
}

bool MultiIndex::leq(const MultiIndex& other) const {
  if (other.dim_ != dim_) fail(ErrorKind::DimensionMismatch, "comparing " + str() + " with " + other.str());
  for (int j = 0; j < dim_; ++j) {
    if ((*this)[j] > other[j]) return false;
  }
  return true;
}

MultiIndex MultiIndex::operator+(const MultiIndex& other) const {
  if (other.dim_ != dim_) fail(ErrorKind::DimensionMismatch, "adding " + str() + " and " + other.str());
  MultiIndex r(dim_);
  for (int j = 0; j < dim_; ++j) r[j] = (*this)[j] + other[j];
  return r;
}

MultiIndex MultiIndex::operator-(const MultiIndex& other) const {
  if (other.dim_ != dim_) fail(ErrorKind::DimensionMismatch, "subtracting " + other.str() + " from " + str());
  MultiIndex r(dim_);
  for (int j = 0; j < dim_; ++j) r[j] = (*this)[j] - other[j];
  return r;
}

MultiIndex MultiIndex::scaled(std::int64_t factor) const {
  MultiIndex r(dim_);
  for (int j = 0; j < dim_; ++j) r[j] = (*this)[j] * factor;
  return r;
}

bool MultiIndex::operator==(const MultiIndex& other) const {
  if (dim_ != other.dim_) return false;
  return std::equal(c_.begin(), c_.begin() + dim_, other.c_.begin());
}

bool MultiIndex::operator<(const MultiIndex& other) const {
  if (dim_ != other.dim_) return dim_ < other.dim_;
  return std::lexicographical_compare(c_.begin(), c_.begin() + dim_, other.c_.begin(),
                                      other.c_.begin() + dim_);
}

std::string MultiIndex::str() const {
  std::string s = "(";
  for (int j = 0; j < dim_; ++j) {
    if (j) s += ",";
    s += std::to_string((*this)[j]);
  }
  return s + ")";
}

std::vector<MultiIndex> box_indices(const MultiIndex& k) {
  if (!k.is_nonnegative()) fail(ErrorKind::InvalidArgument, "box corner " + k.str() + " is negative");
  std::vector<MultiIndex> out;
  MultiIndex cur(k.dim(), 0);
  while (true) {
    out.push_back(cur);
    int j = k.dim() - 1;
    while (j >= 0 && cur[j] == k[j]) {
      cur[j] = 0;
      --j;
    }
    if (j < 0) break;
    ++cur[j];
  }
  return out;
}

BinaryPattern::BinaryPattern(int dim, unsigned bits) : dim_(dim), bits_(bits) {
  if (dim < 1 || dim > kMaxDim || bits >= (1U << dim)) {
    fail(ErrorKind::InvalidArgument, "bad binary pattern");
  }
}

int BinaryPattern::sign() const {
  int ones = 0;
  for (int j = 0; j < dim_; ++j) ones += component(j);
  return ones % 2 == 0 ? 1 : -1;
}

bool BinaryPattern::support_within(const MultiIndex& kappa) const {
  return (bits_ & ~support_set(kappa)) == 0U;
}

MultiIndex BinaryPattern::as_index() const {
  MultiIndex m(dim_);
  for (int j = 0; j < dim_; ++j) m[j] = component(j);
  return m;
}

std::vector<BinaryPattern> BinaryPattern::all(int dim) {
  std::vector<BinaryPattern> out;
  for (unsigned b = 0; b < (1U << dim); ++b) out.emplace_back(dim, b);
  return out;
}

unsigned support_set(const MultiIndex& x) {
  unsigned s = 0;
  for (int j = 0; j < x.dim(); ++j) {
    if (x[j] != 0) s |= 1U << j;
  }
  return s;
}

}  // namespace mrlp
