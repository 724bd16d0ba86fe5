#include "mrlp/czd.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "mrlp/error.hpp"
#include "mrlp/grid_io.hpp"

namespace mrlp {

double DyadicInterval::lo() const { return std::ldexp(static_cast<double>(n), -k); }
double DyadicInterval::length() const { return std::ldexp(1.0, -k); }

Interval DyadicInterval::cells(int depth) const {
  if (depth < k) fail(ErrorKind::ResolutionExhausted, "dyadic interval finer than the grid");
  const std::int64_t w = std::int64_t{1} << (depth - k);
  return {n * w, w};
}

DyadicInterval DyadicInterval::parent() const {
  // floor(n / 2) for negative n as well.
  return {k - 1, n >= 0 ? n / 2 : -((-n + 1) / 2)};
}

double CZDecomposition::measure_w() const {
  double m = 0.0;
  for (const auto& c : cubes) m += c.q.length();
  return m;
}

bool CZDecomposition::in_w(std::int64_t cell) const {
  auto it = std::upper_bound(cubes.begin(), cubes.end(), cell, [this](std::int64_t x, const CzCube& c) {
    return x < c.q.cells(depth).lo;
  });
  if (it == cubes.begin()) return false;
  --it;
  const Interval iv = it->q.cells(depth);
  return cell >= iv.lo && cell < iv.hi();
}

namespace {

struct Sums {
  double abs = 0.0;
  double signed_sum = 0.0;
};

/// Sums of |f| and f over a cell range (zero outside the box).
Sums cell_sums(const GridFunction& f, Interval cells) {
  const Interval box = f.box().axis_interval(0);
  const Interval common = intersect(box, cells);
  Sums s;
  const auto v = f.values();
  for (std::int64_t i = common.lo; i < common.hi(); ++i) {
    const double x = v[static_cast<std::size_t>(i - box.lo)].real();
    s.abs += std::abs(x);
    s.signed_sum += x;
  }
  return s;
}

double average_abs(const GridFunction& f, const DyadicInterval& q) {
  const Interval c = q.cells(f.depth());
  return cell_sums(f, c).abs / static_cast<double>(c.len);
}

void require_1d_real(const GridFunction& f) {
  if (f.dim() != 1) fail(ErrorKind::DimensionMismatch, "Calderon-Zygmund decomposition is one-dimensional");
  if (!f.is_real()) fail(ErrorKind::InvalidArgument, "Calderon-Zygmund decomposition needs real f");
}

struct Component {
  double a;
  double b;
};

std::vector<Component> w_components(const CZDecomposition& dec) {
  std::vector<Component> out;
  for (const auto& c : dec.cubes) {
    const double a = c.q.lo();
    const double b = a + c.q.length();
    if (!out.empty() && out.back().b == a) {
      out.back().b = b;
    } else {
      out.push_back({a, b});
    }
  }
  return out;
}

}  // namespace

CZDecomposition cz_decompose(const GridFunction& f, double alpha) {
  require_1d_real(f);
  if (!(alpha > 0.0) || !std::isfinite(alpha)) fail(ErrorKind::InvalidArgument, "alpha must be positive");
  const int J = f.depth();
  const double total = cell_sums(f, f.box().axis_interval(0)).abs;
  if (!(total > 0.0)) fail(ErrorKind::InvalidArgument, "decomposition needs ||f||_1 > 0");

  const int m_cap = std::min(kMaxRootExponent, 60 - J);
  const Interval box = f.box().axis_interval(0);
  int m = 0;
  auto root_cells = [J](int e) { return std::int64_t{1} << (J + e); };
  while (m < m_cap && (box.lo < -root_cells(m) || box.hi() > root_cells(m))) ++m;
  if (box.lo < -root_cells(m) || box.hi() > root_cells(m)) {
    fail(ErrorKind::ResolutionExhausted, "support too wide for a dyadic root");
  }
  // Root average = sum |f| h / 2^(m+1).
  auto root_average = [&](int e) { return total / static_cast<double>(2 * root_cells(e)); };
  while (m < m_cap && root_average(m) > alpha) ++m;
  if (root_average(m) > alpha) {
    fail(ErrorKind::AlphaTooSmall, "root average " + format_double(root_average(m)) +
                                       " exceeds alpha " + format_double(alpha) +
                                       " even at [-2^" + std::to_string(m) + ", 2^" + std::to_string(m) + ")");
  }

  CZDecomposition dec;
  dec.alpha = alpha;
  dec.root_exponent = m;
  dec.depth = J;

  // Depth-first, left child first, so cubes come out sorted.
  std::vector<DyadicInterval> stack{{-m, 0}, {-m, -1}};
  while (!stack.empty()) {
    const DyadicInterval q = stack.back();
    stack.pop_back();
    const Interval c = q.cells(J);
    if (intersect(c, box).empty()) continue;
    const Sums s = cell_sums(f, c);
    if (s.abs == 0.0) continue;
    const double avg = s.abs / static_cast<double>(c.len);
    if (avg > alpha) {
      dec.cubes.push_back({q, avg, s.signed_sum / static_cast<double>(c.len)});
    } else if (q.k < J) {
      stack.push_back({q.k + 1, 2 * q.n + 1});
      stack.push_back({q.k + 1, 2 * q.n});
    }
  }

  Box gbox = f.box();
  for (const auto& cube : dec.cubes) {
    const Interval c = cube.q.cells(J);
    gbox = hull(gbox, Box(MultiIndex{c.lo}, {c.len, 0, 0}));
  }
  dec.good = f.embedded(gbox);
  dec.good.set_provenance("good part");
  auto gv = dec.good.values();
  const std::int64_t g0 = gbox.origin()[0];
  for (const auto& cube : dec.cubes) {
    const Interval c = cube.q.cells(J);
    std::vector<Complex> h(static_cast<std::size_t>(c.len));
    for (std::int64_t i = 0; i < c.len; ++i) {
      auto& gi = gv[static_cast<std::size_t>(c.lo + i - g0)];
      h[static_cast<std::size_t>(i)] = gi.real() - cube.mean;
      gi = cube.mean;
    }
    dec.bad.emplace_back(J, Box(MultiIndex{c.lo}, {c.len, 0, 0}), std::move(h), "bad part");
  }
  return dec;
}

bool CzReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CzCheck& c) { return c.pass; });
}

CzReport verify_cz(const CZDecomposition& dec, const GridFunction& f) {
  require_1d_real(f);
  CzReport rep;
  const double alpha = dec.alpha;
  const double h = f.step();
  const double l1 = cell_sums(f, f.box().axis_interval(0)).abs * h;
  auto add = [&rep](std::string name, double measured, double bound, bool pass) {
    rep.checks.push_back({std::move(name), pass, measured, bound});
  };

  // |f| <= alpha on F, and every cell above alpha lies in W.
  double f_on_f = 0.0;
  std::int64_t uncovered = 0;
  const Interval fb = f.box().axis_interval(0);
  for (std::int64_t i = fb.lo; i < fb.hi(); ++i) {
    const double v = std::abs(f.values()[static_cast<std::size_t>(i - fb.lo)].real());
    if (dec.in_w(i)) continue;
    f_on_f = std::max(f_on_f, v);
    if (v > alpha) ++uncovered;
  }
  add("f_bounded_on_F", f_on_f, alpha, f_on_f <= alpha);
  add("W_covers_large_values", static_cast<double>(uncovered), 0.0, uncovered == 0);
  const double mw = dec.measure_w();
  add("measure_W", mw, l1 / alpha, mw <= l1 / alpha * (1.0 + 1e-12));

  bool disjoint = true;
  for (std::size_t r = 1; r < dec.cubes.size(); ++r) {
    if (dec.cubes[r - 1].q.cells(dec.depth).hi() > dec.cubes[r].q.cells(dec.depth).lo) disjoint = false;
  }
  add("cubes_disjoint", disjoint ? 0.0 : 1.0, 0.0, disjoint);

  double avg_min = dec.cubes.empty() ? 0.0 : INFINITY;
  double avg_max = 0.0;
  double parent_max = 0.0;
  for (const auto& c : dec.cubes) {
    avg_min = std::min(avg_min, c.average);
    avg_max = std::max(avg_max, c.average);
    const double pa = c.q.k == -dec.root_exponent
                          ? l1 / std::ldexp(2.0, dec.root_exponent)
                          : average_abs(f, c.q.parent());
    parent_max = std::max(parent_max, pa);
  }
  add("cube_average_above_alpha", avg_min, alpha, dec.cubes.empty() || avg_min > alpha);
  add("cube_average_at_most_2alpha", avg_max, 2.0 * alpha, avg_max <= 2.0 * alpha);
  add("parent_average_at_most_alpha", parent_max, alpha, parent_max <= alpha);

  const double g_sup = sup_norm(dec.good);
  add("good_sup_at_most_2alpha", g_sup, 2.0 * alpha, g_sup <= 2.0 * alpha);
  const double g2 = std::pow(lp_norm(dec.good, 2.0), 2.0);
  add("good_L2_squared", g2, 2.0 * alpha * l1, g2 <= 2.0 * alpha * l1 * (1.0 + 1e-12));

  double h_abs_ratio = 0.0;
  double h_mean = 0.0;
  for (std::size_t r = 0; r < dec.bad.size(); ++r) {
    double s_abs = 0.0;
    double s = 0.0;
    for (const auto& z : dec.bad[r].values()) {
      s_abs += std::abs(z.real());
      s += z.real();
    }
    const double mq = dec.cubes[r].q.length();
    h_abs_ratio = std::max(h_abs_ratio, s_abs * h / (alpha * mq));
    h_mean = std::max(h_mean, std::abs(s * h));
  }
  add("bad_L1_at_most_4alpha_mesQ", h_abs_ratio, 4.0, h_abs_ratio <= 4.0);
  add("bad_mean_zero", h_mean, 1e-12 * l1, h_mean <= 1e-12 * l1);

  GridFunction rest = difference(f, dec.good);
  for (const auto& b : dec.bad) rest.add_scaled(b, -1.0);
  const double recon = sup_norm(rest);
  add("reconstruction", recon, 1e-12, recon <= 1e-12);

  // Distance comparability, measured only.
  const auto comps = w_components(dec);
  rep.c3 = dec.cubes.empty() ? 0.0 : INFINITY;
  rep.c4 = 0.0;
  for (const auto& c : dec.cubes) {
    const double a = c.q.lo();
    const double b = a + c.q.length();
    for (const auto& w : comps) {
      if (a >= w.a && b <= w.b) {
        const double ratio = std::min(a - w.a, w.b - b) / c.q.length();
        rep.c3 = std::min(rep.c3, ratio);
        rep.c4 = std::max(rep.c4, ratio);
      }
    }
  }
  return rep;
}

MarcinkiewiczResult marcinkiewicz_integral(const CZDecomposition& dec, double radius) {
  if (!(radius > 0.0)) fail(ErrorKind::InvalidArgument, "truncation radius must be positive");
  MarcinkiewiczResult res;
  res.measure_w = dec.measure_w();
  const int J = dec.depth;
  const double h = std::ldexp(1.0, -J);
  const auto lim = static_cast<std::int64_t>(std::floor(radius / h));
  // Grid cells of W with their distance to F.
  const auto comps = w_components(dec);
  std::vector<double> u_pos;
  std::vector<double> u_rho;
  for (const auto& c : dec.cubes) {
    const Interval cells = c.q.cells(J);
    for (std::int64_t i = cells.lo; i < cells.hi(); ++i) {
      const double u = (static_cast<double>(i) + 0.5) * h;
      for (const auto& w : comps) {
        if (u > w.a && u < w.b) {
          u_pos.push_back(u);
          u_rho.push_back(std::min(u - w.a, w.b - u));
          break;
        }
      }
    }
  }
  std::vector<std::int64_t> xs;
  for (std::int64_t i = -lim; i < lim; ++i) {
    if (!dec.in_w(i)) xs.push_back(i);
  }
  if (xs.empty()) fail(ErrorKind::DegenerateF, "F has no grid cells inside [-R, R]");
  if (u_pos.empty()) return res;

  std::vector<double> m(xs.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = (static_cast<double>(xs[i]) + 0.5) * h;
    double acc = 0.0;
    for (std::size_t j = 0; j < u_pos.size(); ++j) {
      const double d = x - u_pos[j];
      acc += u_rho[j] / (d * d);
    }
    m[i] = acc * h;
  }
  double total = 0.0;
  for (double v : m) total += v;
  res.integral = total * h;
  res.ratio = res.measure_w > 0.0 ? res.integral / res.measure_w : 0.0;
  return res;
}

std::vector<WeakTypeRow> weak_type_measure(const std::function<GridFunction(const GridFunction&)>& T,
                                           const GridFunction& f, const std::vector<double>& alphas) {
  const GridFunction tf = T(f);
  const double l1 = l1_norm(f);
  const double l2 = lp_norm(f, 2.0);
  std::vector<double> mags;
  mags.reserve(tf.size());
  for (const auto& z : tf.values()) mags.push_back(std::abs(z));
  std::sort(mags.begin(), mags.end());
  std::vector<WeakTypeRow> out;
  for (double a : alphas) {
    const auto above = mags.end() - std::upper_bound(mags.begin(), mags.end(), a);
    WeakTypeRow r;
    r.alpha = a;
    r.measure = static_cast<double>(above) * tf.cell_volume();
    r.l1_statistic = l1 > 0.0 ? r.measure * a / l1 : 0.0;
    r.l2_statistic = l2 > 0.0 ? std::sqrt(r.measure) * a / l2 : 0.0;
    out.push_back(r);
  }
  return out;
}

void write_cube_csv(std::ostream& out, const CZDecomposition& dec) {
  out << "k,n,average\n";
  for (const auto& c : dec.cubes) out << c.q.k << ',' << c.q.n << ',' << format_double(c.average) << '\n';
}

void write_cz_report(std::ostream& out, const CZDecomposition& dec, const CzReport& report) {
  out << "alpha " << format_double(dec.alpha) << "\n"
      << "root_exponent " << dec.root_exponent << "\n"
      << "cubes " << dec.cubes.size() << "\n"
      << "measure_W " << format_double(dec.measure_w()) << "\n";
  for (const auto& c : report.checks) {
    out << c.name << ' ' << format_double(c.measured) << ' ' << format_double(c.bound) << ' '
        << (c.pass ? "PASS" : "FAIL") << '\n';
  }
  out << "c3 " << format_double(report.c3) << "\n"
      << "c4 " << format_double(report.c4) << "\n";
}

}  // namespace mrlp
