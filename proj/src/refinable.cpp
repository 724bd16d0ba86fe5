#include "mrlp/refinable.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <span>

#include "mrlp/error.hpp"
#include "mrlp/grid_io.hpp"

namespace mrlp {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Eigenvalues closer than this to the target count as the same cluster. It is
// much looser than the null-space test so a defective pair split by rounding
// (typically ~1e-8 apart) is still caught.
constexpr double kClusterRadius = 1e-6;
constexpr double kNullSpaceTol = 1e-10;

/// M_ij = scale * h_{2i - j} on nodes lo .. lo + n - 1.
Eigen::MatrixXd integer_matrix(const Mask& h, std::int64_t lo, std::int64_t n, double scale) {
  Eigen::MatrixXd m(n, n);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      m(i, j) = scale * h.at(2 * (lo + i) - (lo + j));
    }
  }
  return m;
}

Eigen::VectorXd simple_eigenvector(const Eigen::MatrixXd& m, double target, const std::string& what) {
  const auto n = m.rows();
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
  int cluster = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(es.eigenvalues()(i) - std::complex<double>(target, 0.0)) < kClusterRadius) ++cluster;
  }
  if (cluster != 1) {
    fail(ErrorKind::NonSimpleEigenvalue, what + ": eigenvalue " + std::to_string(target) +
                                             " has multiplicity " + std::to_string(cluster));
  }
  const Eigen::MatrixXd shifted = m - target * Eigen::MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(n - 1) > kNullSpaceTol || (n >= 2 && sv(n - 2) <= kNullSpaceTol)) {
    fail(ErrorKind::NonSimpleEigenvalue, what + ": eigenspace is not one-dimensional");
  }
  return svd.matrixV().col(n - 1);
}

std::vector<double> integer_derivatives(const FilterBank& bank, Which which) {
  const Mask& h = bank.mask(which);
  const Support s = bank.support(which);
  const auto n = s.length();
  const Eigen::MatrixXd m = integer_matrix(h, s.lo, n, 2.0 * kSqrt2);
  Eigen::VectorXd v = simple_eigenvector(m / 2.0, 0.5, bank.id + " derivative");
  // sum phi'(n) = 0 holds automatically; fix scale by sum n phi'(n) = -1.
  double moment = 0.0;
  for (std::int64_t i = 0; i < n; ++i) moment += static_cast<double>(s.lo + i) * v(i);
  if (std::abs(moment) < 1e-12) fail(ErrorKind::NonSimpleEigenvalue, bank.id + ": degenerate derivative moment");
  v *= -1.0 / moment;
  std::vector<double> out(static_cast<std::size_t>(n + 1), 0.0);
  for (std::int64_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = v(i);
  return out;
}

/// One subdivision step: table at level l-1 (step 2^-(l-1)) -> level l.
std::vector<double> refine(const std::vector<double>& prev, const Mask& h, Support s, int l,
                           double scale) {
  const std::int64_t len = s.length();
  const std::int64_t half = std::int64_t{1} << (l - 1);
  const std::int64_t count = len * (half * 2) + 1;
  std::vector<double> next(static_cast<std::size_t>(count), 0.0);
  for (std::int64_t i = 0; i < count; ++i) {
    if (i % 2 == 0) {
      next[static_cast<std::size_t>(i)] = prev[static_cast<std::size_t>(i / 2)];
      continue;
    }
    double acc = 0.0;
    for (std::size_t t = 0; t < h.taps.size(); ++t) {
      const std::int64_t n = h.first + static_cast<std::int64_t>(t);
      const std::int64_t j = (s.lo - n) * half + i;
      if (j < 0 || j > len * half) continue;
      acc += h.taps[t] * prev[static_cast<std::size_t>(j)];
    }
    next[static_cast<std::size_t>(i)] = scale * acc;
  }
  return next;
}

}  // namespace

double Mask::sum() const {
  double s = 0.0;
  for (double t : taps) s += t;
  return s;
}

const char* to_string(Which w) { return w == Which::primal ? "primal" : "dual"; }

bool FilterBank::self_dual() const {
  return primal.first == dual.first && primal.taps == dual.taps;
}

void FilterBank::validate() const {
  auto bad = [this](const std::string& what) { fail(ErrorKind::InvalidBank, id + ": " + what); };
  if (id.empty()) bad("empty id");
  for (Which w : {Which::primal, Which::dual}) {
    const Mask& m = mask(w);
    const std::string name = to_string(w);
    if (m.taps.empty()) bad(name + " mask is empty");
    for (double t : m.taps) {
      if (!std::isfinite(t)) bad(name + " mask has a non-finite tap");
    }
    const Support s = support(w);
    if (s.length() != static_cast<std::int64_t>(m.taps.size()) - 1) {
      bad(name + " support length " + std::to_string(s.length()) + " != mask length - 1");
    }
    if (s.lo != m.first) bad(name + " support does not start at the first mask index");
    if (std::abs(m.sum() - kSqrt2) > 1e-12) {
      bad(name + " mask sum " + format_double(m.sum()) + " != sqrt(2)");
    }
  }
}

std::uint64_t FilterBank::content_hash() const {
  std::vector<unsigned char> bytes;
  auto push = [&bytes](const void* p, std::size_t n) {
    const auto* c = static_cast<const unsigned char*>(p);
    bytes.insert(bytes.end(), c, c + n);
  };
  for (const Mask* m : {&primal, &dual}) {
    push(&m->first, sizeof(m->first));
    push(m->taps.data(), m->taps.size() * sizeof(double));
  }
  const unsigned char flag = smooth_dual ? 1 : 0;
  push(&flag, 1);
  return fnv1a64(bytes);
}

FilterBank FilterBank::orthonormal(std::string id, std::int64_t first, std::vector<double> taps,
                                   bool smooth) {
  FilterBank b;
  b.id = std::move(id);
  b.primal = Mask{first, std::move(taps)};
  b.dual = b.primal;
  b.primal_support = {first, b.primal.last()};
  b.dual_support = b.primal_support;
  b.smooth_dual = smooth;
  return b;
}

IntegerValues integer_values(const FilterBank& bank, Which which) {
  bank.validate();
  const Mask& h = bank.mask(which);
  const Support s = bank.support(which);
  const auto n = s.length();
  if (n == 0) fail(ErrorKind::InvalidBank, bank.id + ": degenerate support");
  const Eigen::MatrixXd m = integer_matrix(h, s.lo, n, kSqrt2);
  Eigen::VectorXd v = simple_eigenvector(m, 1.0, bank.id + " " + to_string(which));
  const double total = v.sum();
  if (std::abs(total) < 1e-12) {
    fail(ErrorKind::NonSimpleEigenvalue, bank.id + ": eigenvector sums to zero");
  }
  v /= total;
  IntegerValues out;
  out.first = s.lo;
  out.values.assign(v.data(), v.data() + n);
  // Values at nodes where phi vanishes come back as +-1e-17; clean them so the
  // integer table is reproducible across Eigen versions.
  for (double& x : out.values) {
    if (std::abs(x) < 1e-15) x = 0.0;
  }
  return out;
}

DyadicTable::DyadicTable(std::string filter_id, Which which, int depth, Support support,
                         std::vector<double> values, std::optional<std::vector<double>> derivatives)
    : filter_id_(std::move(filter_id)),
      which_(which),
      depth_(depth),
      support_(support),
      values_(std::move(values)),
      derivatives_(std::move(derivatives)) {
  const auto expected = static_cast<std::size_t>((support_.length() << depth_) + 1);
  if (values_.size() != expected || (derivatives_ && derivatives_->size() != expected)) {
    fail(ErrorKind::InvalidArgument, "dyadic table length does not match support and depth");
  }
  checksum_ = compute_checksum(values_, derivatives_);
}

std::uint64_t DyadicTable::compute_checksum(const std::vector<double>& values,
                                            const std::optional<std::vector<double>>& derivatives) {
  auto bytes = [](const std::vector<double>& v) {
    return std::span<const unsigned char>(reinterpret_cast<const unsigned char*>(v.data()),
                                          v.size() * sizeof(double));
  };
  std::uint64_t h = fnv1a64(bytes(values));
  if (derivatives) h = fnv1a64(bytes(*derivatives), h);
  return h;
}

double DyadicTable::value_at(std::int64_t k) const {
  const std::int64_t i = k - (support_.lo << depth_);
  if (i < 0 || i >= static_cast<std::int64_t>(values_.size())) return 0.0;
  return values_[static_cast<std::size_t>(i)];
}

double DyadicTable::value_at_dyadic(std::int64_t k, int level) const {
  if (level > depth_ || level < 0) fail(ErrorKind::DepthOverflow, "level exceeds table depth");
  return value_at(k << (depth_ - level));
}

std::vector<double> DyadicTable::midpoint_samples(int s) const {
  if (s < 0 || s >= depth_) {
    fail(ErrorKind::ResolutionExhausted,
         "midpoints at scale " + std::to_string(s) + " need a table deeper than " +
             std::to_string(depth_));
  }
  const std::int64_t count = support_.length() << s;
  const std::int64_t stride = std::int64_t{1} << (depth_ - s - 1);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (std::int64_t t = 0; t < count; ++t) {
    out[static_cast<std::size_t>(t)] = values_[static_cast<std::size_t>((2 * t + 1) * stride)];
  }
  return out;
}

double DyadicTable::refinement_residual(const Mask& mask) const {
  const std::int64_t scale = std::int64_t{1} << depth_;
  const std::int64_t lo = support_.lo * scale;
  double worst = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const std::int64_t k = lo + static_cast<std::int64_t>(i);  // x = k 2^-L
    double acc = 0.0;
    for (std::size_t t = 0; t < mask.taps.size(); ++t) {
      const std::int64_t n = mask.first + static_cast<std::int64_t>(t);
      acc += mask.taps[t] * value_at(2 * k - n * scale);
    }
    worst = std::max(worst, std::abs(values_[i] - kSqrt2 * acc));
  }
  return worst;
}

double DyadicTable::partition_of_unity_residual() const {
  const std::int64_t scale = std::int64_t{1} << depth_;
  double worst = 0.0;
  for (std::int64_t k = 0; k < scale; ++k) {
    double acc = 0.0;
    for (std::int64_t nu = -support_.hi - 1; nu <= -support_.lo + 1; ++nu) {
      acc += value_at(k - nu * scale);
    }
    worst = std::max(worst, std::abs(acc - 1.0));
  }
  return worst;
}

DyadicTable cascade(const FilterBank& bank, Which which, int depth) {
  if (depth < 1 || depth > kMaxCascadeDepth) {
    fail(ErrorKind::DepthOverflow,
         "cascade depth " + std::to_string(depth) + " outside 1.." + std::to_string(kMaxCascadeDepth));
  }
  const IntegerValues iv = integer_values(bank, which);
  const Support s = bank.support(which);
  const Mask& h = bank.mask(which);

  std::vector<double> values(iv.values);
  values.push_back(0.0);  // phi(hi)
  for (int l = 1; l <= depth; ++l) values = refine(values, h, s, l, kSqrt2);

  std::optional<std::vector<double>> derivs;
  if (bank.smooth_dual) {
    std::vector<double> d = integer_derivatives(bank, which);
    for (int l = 1; l <= depth; ++l) d = refine(d, h, s, l, 2.0 * kSqrt2);
    derivs = std::move(d);
  }
  return DyadicTable(bank.id, which, depth, s, std::move(values), std::move(derivs));
}

namespace {

/// h sum_t a_t b_{t + offset}
double shifted_dot(const std::vector<double>& a, const std::vector<double>& b, std::int64_t offset,
                   double h) {
  double acc = 0.0;
  const auto na = static_cast<std::int64_t>(a.size());
  const auto nb = static_cast<std::int64_t>(b.size());
  const std::int64_t lo = std::max<std::int64_t>(0, -offset);
  const std::int64_t hi = std::min(na, nb - offset);
  for (std::int64_t t = lo; t < hi; ++t) {
    acc += a[static_cast<std::size_t>(t)] * b[static_cast<std::size_t>(t + offset)];
  }
  return acc * h;
}

}  // namespace

Eigen::MatrixXd shift_gram(const FilterBank& bank, Which which, std::int64_t lo, std::int64_t hi,
                           int depth) {
  if (depth < 12) fail(ErrorKind::InvalidArgument, "shift_gram needs quadrature depth >= 12");
  if (hi < lo) fail(ErrorKind::InvalidArgument, "empty shift range");
  const DyadicTable table = cascade(bank, which, depth + 1);
  const std::vector<double> m = table.midpoint_samples(depth);
  const double h = std::ldexp(1.0, -depth);
  const std::int64_t len = table.support().length();
  std::vector<double> g(static_cast<std::size_t>(len + 1));
  for (std::int64_t k = 0; k <= len; ++k) {
    g[static_cast<std::size_t>(k)] = shifted_dot(m, m, -(k << depth), h);
  }
  const auto n = hi - lo + 1;
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (std::int64_t i = 0; i < n; ++i) {
    for (std::int64_t j = 0; j < n; ++j) {
      const std::int64_t k = std::abs(i - j);
      if (k <= len) out(i, j) = g[static_cast<std::size_t>(k)];
    }
  }
  return out;
}

double biorthogonality_residual(const FilterBank& bank, int depth) {
  const DyadicTable tp = cascade(bank, Which::primal, depth + 1);
  const DyadicTable td = cascade(bank, Which::dual, depth + 1);
  const std::vector<double> mp = tp.midpoint_samples(depth);
  const std::vector<double> md = td.midpoint_samples(depth);
  const double h = std::ldexp(1.0, -depth);
  const Support sp = tp.support();
  const Support sd = td.support();
  // integral phi(x) phi*(x - k): x = a + (t + 1/2) h, x - k = a* + (u + 1/2) h.
  double worst = 0.0;
  for (std::int64_t k = sp.lo - sd.hi; k <= sp.hi - sd.lo; ++k) {
    const std::int64_t offset = (sp.lo - sd.lo - k) << depth;
    const double v = shifted_dot(mp, md, offset, h) - (k == 0 ? 1.0 : 0.0);
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

}  // namespace mrlp
