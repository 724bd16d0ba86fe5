#include <cmath>
#include <vector>

#include "mrlp/kernels.hpp"

namespace mrlp::kernels {

namespace {

template <class Term>
double sum_reference(std::span<const Complex> v, Term term) {
  double s = 0.0;
  for (const auto& z : v) s += term(z);
  return s;
}

template <class Term>
double sum_chunked(std::span<const Complex> v, Term term) {
  const std::size_t chunks = (v.size() + kReductionChunk - 1) / kReductionChunk;
  std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t lo = c * kReductionChunk;
    const std::size_t hi = std::min(v.size(), lo + kReductionChunk);
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += term(v[i]);
    partial[c] = s;
  }
  double total = 0.0;
  for (double s : partial) total += s;
  return total;
}

}  // namespace

double sum_abs_pow_reference(std::span<const Complex> v, double p) {
  return sum_reference(v, [p](const Complex& z) { return std::pow(std::abs(z), p); });
}

double sum_abs_pow_omp(std::span<const Complex> v, double p) {
  return sum_chunked(v, [p](const Complex& z) { return std::pow(std::abs(z), p); });
}

double sum_abs_reference(std::span<const Complex> v) {
  return sum_reference(v, [](const Complex& z) { return std::abs(z); });
}

double sum_abs_omp(std::span<const Complex> v) {
  return sum_chunked(v, [](const Complex& z) { return std::abs(z); });
}

double sum_norm_reference(std::span<const Complex> v) {
  return sum_reference(v, [](const Complex& z) { return z.real() * z.real() + z.imag() * z.imag(); });
}

double sum_norm_omp(std::span<const Complex> v) {
  return sum_chunked(v, [](const Complex& z) { return z.real() * z.real() + z.imag() * z.imag(); });
}

}  // namespace mrlp::kernels
