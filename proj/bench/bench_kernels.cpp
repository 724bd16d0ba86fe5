// Serial reference kernels against the OpenMP ones on the same inputs.

#include <benchmark/benchmark.h>

#include <cmath>
#include <map>
#include <memory>

#include "mrlp/corpus.hpp"
#include "mrlp/kernels.hpp"
#include "mrlp/mrand.hpp"
#include "mrlp/registry.hpp"

namespace {

using mrlp::kernels::Exec;

const mrlp::TensorBanks& banks_2d(const std::string& id, int J) {
  static std::map<std::pair<std::string, int>, std::unique_ptr<mrlp::TensorBanks>> cache;
  auto& slot = cache[{id, J}];
  if (!slot) slot = std::make_unique<mrlp::TensorBanks>(mrlp::find_bank(id), 2, J);
  return *slot;
}

void apply_axis(benchmark::State& state, const std::string& id, Exec exec) {
  const int J = static_cast<int>(state.range(0));
  const int axis = static_cast<int>(state.range(1));
  const auto& banks = banks_2d(id, J);
  const auto f = mrlp::gaussian_bump(2, J, 0.1, 0.3);
  const auto op = mrlp::LevelCombination::projector(banks.axis(axis), 2);
  for (auto _ : state) {
    auto g = mrlp::kernels::apply_lines(f, axis, op, exec);
    benchmark::DoNotOptimize(g.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(f.size()));
}

void BM_ApplyHaarReference(benchmark::State& s) { apply_axis(s, "haar", Exec::reference); }
void BM_ApplyHaarOmp(benchmark::State& s) { apply_axis(s, "haar", Exec::parallel); }
void BM_ApplyDb4Reference(benchmark::State& s) { apply_axis(s, "db4", Exec::reference); }
void BM_ApplyDb4Omp(benchmark::State& s) { apply_axis(s, "db4", Exec::parallel); }

BENCHMARK(BM_ApplyHaarReference)->Args({8, 0})->Args({8, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplyHaarOmp)->Args({8, 0})->Args({8, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplyDb4Reference)->Args({8, 0})->Args({8, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplyDb4Omp)->Args({8, 0})->Args({8, 1})->Unit(benchmark::kMillisecond);

std::vector<mrlp::Complex> signal(std::size_t n) {
  std::vector<mrlp::Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = {std::sin(0.001 * static_cast<double>(i)), 0.5};
  return v;
}

void BM_PowReference(benchmark::State& state) {
  const auto v = signal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mrlp::kernels::sum_abs_pow_reference(v, 1.5));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
void BM_PowOmp(benchmark::State& state) {
  const auto v = signal(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(mrlp::kernels::sum_abs_pow_omp(v, 1.5));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PowReference)->Arg(1 << 20);
BENCHMARK(BM_PowOmp)->Arg(1 << 20);

}  // namespace

BENCHMARK_MAIN();
