#include <benchmark/benchmark.h>

#include "jordan/jordan.hpp"

namespace {

const char* const kFamilies[] = {"matrix:2", "matrix:3", "spin:4", "fn:5", "sum:fn:2+matrix:2"};

jordan::Element sample(const jordan::AlgebraPtr& alg, std::uint64_t seed) {
  jordan::Rng rng(seed);
  return jordan::random_element(alg, rng);
}

void BM_JordanMul(benchmark::State& state) {
  const auto alg = jordan::parse_algebra(kFamilies[state.range(0)]);
  const auto a = sample(alg, 1);
  const auto b = sample(alg, 2);
  for (auto _ : state) benchmark::DoNotOptimize(jordan::jordan_mul(a, b));
  state.SetLabel(kFamilies[state.range(0)]);
}
BENCHMARK(BM_JordanMul)->DenseRange(0, 4);

void BM_Spectrum(benchmark::State& state) {
  const auto alg = jordan::parse_algebra(kFamilies[state.range(0)]);
  const auto a = sample(alg, 3);
  for (auto _ : state) benchmark::DoNotOptimize(jordan::jordan_spectrum(a));
  state.SetLabel(kFamilies[state.range(0)]);
}
BENCHMARK(BM_Spectrum)->DenseRange(0, 4);

void BM_Exp(benchmark::State& state) {
  const auto alg = jordan::parse_algebra(kFamilies[state.range(0)]);
  const auto a = 3.0 * sample(alg, 4);
  for (auto _ : state) benchmark::DoNotOptimize(jordan::exp(a));
  state.SetLabel(kFamilies[state.range(0)]);
}
BENCHMARK(BM_Exp)->DenseRange(0, 4);

void BM_Log(benchmark::State& state) {
  const auto alg = jordan::parse_algebra(kFamilies[state.range(0)]);
  const auto a = jordan::exp(sample(alg, 5));
  for (auto _ : state) benchmark::DoNotOptimize(jordan::log(a));
  state.SetLabel(kFamilies[state.range(0)]);
}
BENCHMARK(BM_Log)->DenseRange(0, 4);

void BM_TrotterU(benchmark::State& state) {
  const auto alg = jordan::make_matrix_jordan(3);
  const auto a = sample(alg, 6);
  const auto b = sample(alg, 7);
  const auto n = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(jordan::trotter_U(a, b, n));
}
BENCHMARK(BM_TrotterU)->RangeMultiplier(8)->Range(16, 4096);

void BM_ConvergenceReport(benchmark::State& state) {
  const auto alg = jordan::make_spin_factor(3);
  const jordan::TrotterInputs in{sample(alg, 8), sample(alg, 9), sample(alg, 10), sample(alg, 11)};
  const auto grid = jordan::geometric_grid(16, 4096, 2);
  const auto threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(jordan::convergence_report(jordan::FormulaId::U_pair, in, grid, threads));
}
BENCHMARK(BM_ConvergenceReport)->Arg(1)->Arg(4)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
