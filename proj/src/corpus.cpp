#include "mrlp/corpus.hpp"

#include <cmath>
#include <random>

#include "mrlp/error.hpp"
#include "mrlp/kernels.hpp"

namespace mrlp {

namespace {

/// Coefficient line (indexed by nu) -> synthesized grid line.
class SynthesisLine : public LineTransform {
 public:
  SynthesisLine(const Mra1d& mra, int level) : mra_(mra), level_(level) {}
  Interval output_interval(Interval window) const override {
    return mra_.synthesis_interval(window, level_);
  }
  void apply(std::span<const Complex> in, Interval in_box, std::span<Complex> out,
             Interval out_box) const override {
    mra_.synthesize_line(in, in_box, level_, 1.0, out, out_box);
  }

 private:
  const Mra1d& mra_;
  int level_;
};

double sq(double x) { return x * x; }

double norm2(const std::array<double, kMaxDim>& x, int d) {
  double s = 0.0;
  for (int j = 0; j < d; ++j) s += sq(x[static_cast<std::size_t>(j)]);
  return s;
}

}  // namespace

Box centered_box(int dim, int depth, int m) {
  const std::int64_t half = std::int64_t{1} << (depth + m);
  return Box(MultiIndex(dim, -half), {2 * half, dim > 1 ? 2 * half : 0, dim > 2 ? 2 * half : 0});
}

GridFunction gaussian_bump(int dim, int depth, double center, double width) {
  return GridFunction::sample(depth, centered_box(dim, depth), [&](const auto& x) {
    double r2 = 0.0;
    for (int j = 0; j < dim; ++j) r2 += sq(x[static_cast<std::size_t>(j)] - center);
    return std::exp(-r2 / (2.0 * width * width));
  }, "gaussian");
}

GridFunction tensor_bump(int dim, int depth, double radius) {
  return GridFunction::sample(depth, centered_box(dim, depth), [&](const auto& x) {
    double v = 1.0;
    for (int j = 0; j < dim; ++j) {
      const double u = 1.0 - sq(x[static_cast<std::size_t>(j)] / radius);
      v *= u > 0.0 ? u * u : 0.0;
    }
    return v;
  }, "tensor bump");
}

GridFunction radial_bump(int dim, int depth, double radius) {
  return GridFunction::sample(depth, centered_box(dim, depth), [&](const auto& x) {
    const double u = 1.0 - norm2(x, dim) / (radius * radius);
    return u > 0.0 ? u * u : 0.0;
  }, "radial bump");
}

GridFunction step_function(int dim, int depth, double lo, double hi, double height) {
  return GridFunction::sample(depth, centered_box(dim, depth), [&](const auto& x) {
    for (int j = 0; j < dim; ++j) {
      const double v = x[static_cast<std::size_t>(j)];
      if (v < lo || v >= hi) return 0.0;
    }
    return height;
  }, "step");
}

GridFunction chirp(int dim, int depth, double omega, double radius) {
  return GridFunction::sample(depth, centered_box(dim, depth), [&](const auto& x) {
    const double r2 = norm2(x, dim);
    return r2 < radius * radius ? std::sin(omega * r2) : 0.0;
  }, "chirp");
}

GridFunction random_vk(const TensorBanks& banks, int level, int count, std::uint64_t seed) {
  if (count < 1) fail(ErrorKind::InvalidArgument, "random V_k element needs at least one shift");
  const int d = banks.dim();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const Interval window{-count / 2, count};
  std::vector<Interval> axes(static_cast<std::size_t>(d), window);
  const Box cbox = Box::from_intervals(axes);
  std::vector<Complex> c(cbox.size());
  for (auto& z : c) z = gauss(rng);
  GridFunction g(banks.grid_depth(), cbox, std::move(c));
  for (int j = 0; j < d; ++j) {
    g = kernels::apply_lines(g, j, SynthesisLine(*banks.axis(j), level), banks.exec);
  }
  g.set_provenance("random V_" + std::to_string(level));
  return g;
}

std::vector<CorpusEntry> standard_corpus(const TensorBanks& banks, int K, std::uint64_t seed) {
  const int d = banks.dim();
  const int J = banks.grid_depth();
  std::vector<CorpusEntry> out;
  out.push_back({"gauss_narrow", gaussian_bump(d, J, 0.3, 0.1), false});
  out.push_back({"gauss_wide", gaussian_bump(d, J, -0.2, 0.4), false});
  out.push_back({"bump_c1", d == 1 ? tensor_bump(1, J, 0.8) : radial_bump(d, J, 0.8), false});
  if (d > 1) out.push_back({"tensor_bump", tensor_bump(d, J, 0.6), false});
  out.push_back({"step_unit", step_function(d, J, 0.0, 1.0), false});
  out.push_back({"step_offset", step_function(d, J, -0.7, 0.45, 2.0), false});
  out.push_back({"chirp", chirp(d, J, 20.0, 1.0), false});
  const int count = std::max(2, 1 << std::min(K, 6));
  out.push_back({"vk_a", random_vk(banks, K, count, seed), true});
  if (d == 1) out.push_back({"vk_b", random_vk(banks, K, count, seed + 1), true});
  return out;
}

std::vector<CorpusEntry> extended_corpus(const TensorBanks& banks, int K, int count,
                                         std::uint64_t seed) {
  const int d = banks.dim();
  const int J = banks.grid_depth();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<CorpusEntry> out;
  for (int i = 0; i < count; ++i) {
    const std::string id = "f" + std::to_string(i);
    switch (i % 5) {
      case 0: {
        // Draws are sequenced explicitly; argument evaluation order is unspecified.
        const double center = -0.5 + u(rng);
        const double width = 0.05 + 0.3 * u(rng);
        out.push_back({id + "_gauss", gaussian_bump(d, J, center, width), false});
        break;
      }
      case 1:
        out.push_back({id + "_bump", tensor_bump(d, J, 0.3 + 0.9 * u(rng)), false});
        break;
      case 2: {
        const double lo = -1.5 + u(rng);
        out.push_back({id + "_step", step_function(d, J, lo, lo + 0.2 + 1.2 * u(rng)), false});
        break;
      }
      case 3: {
        const double omega = 5.0 + 25.0 * u(rng);
        const double radius = 0.5 + u(rng);
        out.push_back({id + "_chirp", chirp(d, J, omega, radius), false});
        break;
      }
      default:
        out.push_back({id + "_vk", random_vk(banks, K, std::max(2, 1 << std::min(K, 6)), rng()), true});
        break;
    }
  }
  return out;
}

GridFunction random_cz_function(int depth, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  GridFunction g = GridFunction::zeros(depth, centered_box(1, depth, 0), "cz random");
  auto v = g.values();
  const auto n = static_cast<std::int64_t>(v.size());
  const int steps = 2 + static_cast<int>(rng() % 4);
  for (int i = 0; i < steps; ++i) {
    const auto a = static_cast<std::int64_t>(u(rng) * static_cast<double>(n));
    const auto w = 1 + static_cast<std::int64_t>(u(rng) * 0.3 * static_cast<double>(n));
    const double height = -3.0 + 6.0 * u(rng);
    for (std::int64_t c = a; c < std::min(n, a + w); ++c) v[static_cast<std::size_t>(c)] += height;
  }
  const int spikes = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < spikes; ++i) {
    const auto c = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(n));
    const double height = 20.0 + 80.0 * u(rng);
    v[c] += (rng() & 1U) ? height : -height;
  }
  return g;
}

}  // namespace mrlp
