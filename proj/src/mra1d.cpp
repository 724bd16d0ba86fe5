#include "mrlp/mra1d.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>

#include "mrlp/error.hpp"
#include "mrlp/grid_io.hpp"
#include "mrlp/table_cache.hpp"

namespace mrlp {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// The residual depends only on the masks; memoize it so that building many
// operators over the same bank does not repeat the quadrature.
double accepted_residual(const FilterBank& bank) {
  static std::mutex mu;
  static std::map<std::uint64_t, double> memo;
  const auto key = bank.content_hash();
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
  }
  const double r = biorthogonality_residual(bank, 12);
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(key, r);
  return r;
}

}  // namespace

Complex LevelCoefficients::at(std::int64_t nu) const {
  if (nu < first || nu > last()) return {};
  return values[static_cast<std::size_t>(nu - first)];
}

void write_coefficients_csv(std::ostream& out, std::span<const LevelCoefficients> levels) {
  out << "kappa,nu,re,im\n";
  for (const auto& c : levels) {
    for (std::size_t i = 0; i < c.values.size(); ++i) {
      out << c.level << ',' << c.first + static_cast<std::int64_t>(i) << ','
          << format_double(c.values[i].real()) << ',' << format_double(c.values[i].imag()) << '\n';
    }
  }
}

Mra1d::Mra1d(FilterBank bank, int grid_depth) : bank_(std::move(bank)), depth_(grid_depth) {
  bank_.validate();
  if (depth_ < kLevelHeadroom || depth_ + 1 > kMaxCascadeDepth) {
    fail(ErrorKind::ResolutionExhausted,
         "grid depth " + std::to_string(depth_) + " outside " + std::to_string(kLevelHeadroom) +
             ".." + std::to_string(kMaxCascadeDepth - 1));
  }
  const double residual = accepted_residual(bank_);
  if (!(residual <= kBankAcceptance)) {
    fail(ErrorKind::BankRejected,
         bank_.id + ": biorthogonality residual " + format_double(residual) + " > 1e-6");
  }
  auto& cache = TableCache::global();
  const auto tp = cache.get(bank_, Which::primal, depth_ + 1);
  const auto td = cache.get(bank_, Which::dual, depth_ + 1);
  for (int kappa = 0; kappa <= max_level(); ++kappa) {
    primal_.push_back(tp->midpoint_samples(depth_ - kappa));
    dual_.push_back(td->midpoint_samples(depth_ - kappa));
  }
}

std::shared_ptr<const Mra1d> Mra1d::role_swapped() const {
  FilterBank b = bank_;
  std::swap(b.primal, b.dual);
  std::swap(b.primal_support, b.dual_support);
  b.id = bank_.id + "~";
  return std::make_shared<const Mra1d>(std::move(b), depth_);
}

void Mra1d::check_level(int kappa) const {
  if (kappa < 0 || kappa > max_level()) {
    fail(ErrorKind::LevelOverflow, "level " + std::to_string(kappa) + " outside 0.." +
                                       std::to_string(max_level()) + " at depth " +
                                       std::to_string(depth_));
  }
}

void Mra1d::check_input(const GridFunction& f) const {
  if (f.dim() != 1) fail(ErrorKind::DimensionMismatch, "1-d operator applied to a " + std::to_string(f.dim()) + "-d function");
  if (f.depth() != depth_) {
    fail(ErrorKind::DepthMismatch, "function at depth " + std::to_string(f.depth()) +
                                       ", operator at depth " + std::to_string(depth_));
  }
}

Interval Mra1d::coefficient_window(Interval cells, int kappa) const {
  check_level(kappa);
  if (cells.empty()) return {0, 0};
  const std::int64_t w = std::int64_t{1} << (depth_ - kappa);
  const std::int64_t lo = floor_div(cells.lo, w) - bank_.dual_support.hi + 1;
  const std::int64_t hi = ceil_div(cells.hi(), w) - 1 - bank_.dual_support.lo;
  return {lo, std::max<std::int64_t>(0, hi - lo + 1)};
}

Interval Mra1d::synthesis_interval(Interval window, int kappa) const {
  check_level(kappa);
  if (window.empty()) return {0, 0};
  const int s = depth_ - kappa;
  const std::int64_t lo = (window.lo + bank_.primal_support.lo) << s;
  return {lo, (window.len - 1 + bank_.primal_support.length()) << s};
}

void Mra1d::analyze_line(std::span<const Complex> in, Interval in_box, int kappa, Interval window,
                         std::span<Complex> coeffs) const {
  const int s = depth_ - kappa;
  const auto& m = dual_[static_cast<std::size_t>(kappa)];
  const auto taps = static_cast<std::int64_t>(m.size());
  const double scale = std::ldexp(1.0, -s);
  for (std::int64_t i = 0; i < window.len; ++i) {
    const std::int64_t nu = window.lo + i;
    const std::int64_t start = ((nu + bank_.dual_support.lo) << s) - in_box.lo;
    const std::int64_t t0 = std::max<std::int64_t>(0, -start);
    const std::int64_t t1 = std::min<std::int64_t>(taps, in_box.len - start);
    double re = 0.0;
    double im = 0.0;
    for (std::int64_t t = t0; t < t1; ++t) {
      const Complex& z = in[static_cast<std::size_t>(start + t)];
      const double w = m[static_cast<std::size_t>(t)];
      re += z.real() * w;
      im += z.imag() * w;
    }
    coeffs[static_cast<std::size_t>(i)] = {re * scale, im * scale};
  }
}

void Mra1d::synthesize_line(std::span<const Complex> coeffs, Interval window, int kappa,
                            Complex weight, std::span<Complex> out, Interval out_box) const {
  const int s = depth_ - kappa;
  const auto& m = primal_[static_cast<std::size_t>(kappa)];
  const auto taps = static_cast<std::int64_t>(m.size());
  for (std::int64_t i = 0; i < window.len; ++i) {
    const Complex c = weight * coeffs[static_cast<std::size_t>(i)];
    if (c == Complex{}) continue;
    const std::int64_t start = ((window.lo + i + bank_.primal_support.lo) << s) - out_box.lo;
    const std::int64_t t0 = std::max<std::int64_t>(0, -start);
    const std::int64_t t1 = std::min<std::int64_t>(taps, out_box.len - start);
    for (std::int64_t t = t0; t < t1; ++t) {
      out[static_cast<std::size_t>(start + t)] += c * m[static_cast<std::size_t>(t)];
    }
  }
}

LevelCoefficients Mra1d::analyze(const GridFunction& f, int kappa) const {
  check_input(f);
  check_level(kappa);
  const Interval cells = f.box().axis_interval(0);
  const Interval window = coefficient_window(cells, kappa);
  LevelCoefficients c;
  c.level = kappa;
  c.grid_depth = depth_;
  c.filter_id = bank_.id;
  c.first = window.lo;
  c.values.assign(static_cast<std::size_t>(window.len), Complex{});
  analyze_line(f.values(), cells, kappa, window, c.values);
  return c;
}

GridFunction Mra1d::synthesize(const LevelCoefficients& c) const {
  if (c.grid_depth != depth_) fail(ErrorKind::DepthMismatch, "coefficients belong to another grid depth");
  if (depth_ - c.level < kLevelHeadroom) {
    fail(ErrorKind::ResolutionExhausted, "synthesis at level " + std::to_string(c.level) +
                                             " needs depth >= level + 4");
  }
  check_level(c.level);
  const Interval window{c.first, static_cast<std::int64_t>(c.values.size())};
  const Interval out_iv = synthesis_interval(window, c.level);
  GridFunction out = GridFunction::zeros(depth_, Box(MultiIndex{out_iv.lo}, {out_iv.len, 0, 0}),
                                         bank_.id + " synthesis");
  synthesize_line(c.values, window, c.level, Complex{1.0, 0.0}, out.values(), out_iv);
  return out;
}

GridFunction Mra1d::project(const GridFunction& f, int kappa) const {
  check_input(f);
  return synthesize(analyze(f, kappa));
}

GridFunction Mra1d::detail(const GridFunction& f, int kappa) const {
  check_input(f);
  if (kappa == 0) return project(f, 0);
  GridFunction fine = project(f, kappa);
  GridFunction coarse = project(f, kappa - 1);
  return difference(fine, coarse);
}

// ---------------------------------------------------------------------------

LevelCombination::LevelCombination(std::shared_ptr<const Mra1d> mra, std::vector<Term> terms)
    : mra_(std::move(mra)), terms_(std::move(terms)) {
  if (!mra_) fail(ErrorKind::InvalidArgument, "level combination without an operator");
}

LevelCombination LevelCombination::projector(std::shared_ptr<const Mra1d> mra, int kappa) {
  return LevelCombination(std::move(mra), {{kappa, 1.0}});
}

LevelCombination LevelCombination::detail(std::shared_ptr<const Mra1d> mra, int kappa) {
  if (kappa == 0) return projector(std::move(mra), 0);
  return LevelCombination(std::move(mra), {{kappa, 1.0}, {kappa - 1, -1.0}});
}

LevelCombination LevelCombination::signs(std::shared_ptr<const Mra1d> mra, std::span<const int> sigma) {
  std::vector<Term> terms;
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    const int next = k + 1 < sigma.size() ? sigma[k + 1] : 0;
    const int w = sigma[k] - next;
    if (w != 0) terms.push_back({static_cast<int>(k), static_cast<double>(w)});
  }
  return LevelCombination(std::move(mra), std::move(terms));
}

Interval LevelCombination::output_interval(Interval in) const {
  Interval out{in.lo, 0};
  for (const auto& t : terms_) {
    out = hull(out, mra_->synthesis_interval(mra_->coefficient_window(in, t.level), t.level));
  }
  return out;
}

void LevelCombination::apply(std::span<const Complex> in, Interval in_box, std::span<Complex> out,
                             Interval out_box) const {
  std::vector<Complex> coeffs;
  for (const auto& t : terms_) {
    const Interval window = mra_->coefficient_window(in_box, t.level);
    coeffs.assign(static_cast<std::size_t>(window.len), Complex{});
    mra_->analyze_line(in, in_box, t.level, window, coeffs);
    mra_->synthesize_line(coeffs, window, t.level, t.weight, out, out_box);
  }
}

}  // namespace mrlp
