#include <benchmark/benchmark.h>

#include "topode/correlators.hpp"
#include "topode/dual.hpp"
#include "topode/reduction.hpp"
#include "topode/resolvent.hpp"

using namespace topode;

namespace {

const Realization& real_of(int key) {
  static std::map<int, Realization> cache;
  auto it = cache.find(key);
  if (it == cache.end()) {
    const char* letter = key < 10 ? "A" : (key < 20 ? "B" : (key < 30 ? "D" : "G"));
    it = cache.emplace(key, Realization::build(make_algebra(letter, key % 10))).first;
  }
  return it->second;
}

}  // namespace

static void BM_BuildRealization(benchmark::State& state) {
  auto id = make_algebra("A", static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Realization::build(id));
}
BENCHMARK(BM_BuildRealization)->Arg(2)->Arg(3)->Arg(4);

// Resolvent recursion: first index, varying depth, on a light and a heavy
// algebra (G_2 is 7x7, D_4 is 8x8).
static void BM_Resolvent(benchmark::State& state) {
  const Realization& r = real_of(static_cast<int>(state.range(0)));
  int depth = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(compute_resolvent(r, 0, depth));
}
BENCHMARK(BM_Resolvent)
    ->Args({2, 5})
    ->Args({2, 10})
    ->Args({12, 5})
    ->Args({32, 5})
    ->Args({24, 5});

// Lowest-weight gauge: decompose a computed resolvent and verify it against
// the reduced scalar system.
static void BM_GaugeDecomposeCheck(benchmark::State& state) {
  const Realization& r = real_of(static_cast<int>(state.range(0)));
  const ReducedSystem& sys = derive_reduced_system(r, KappaMode::Unit);
  MSeries s = compute_resolvent(r, 0, 5).assembled();
  for (auto _ : state) {
    GaugeDecomposition d = decompose_gauge(r, s);
    benchmark::DoNotOptimize(check_reduced_solution(sys, d.S));
  }
}
BENCHMARK(BM_GaugeDecomposeCheck)->Arg(2)->Arg(12)->Arg(24)->Arg(32);

// Essential series extraction including the resolvent it consumes.
static void BM_EssentialSeries(benchmark::State& state) {
  const Realization& r = real_of(static_cast<int>(state.range(0)));
  int depth = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(essential_series(r, 0, depth));
}
BENCHMARK(BM_EssentialSeries)->Args({2, 4})->Args({12, 3})->Args({24, 2});

// Dual side: Borel transform, rebasing, and Frobenius-consistent assembly.
static void BM_DualMatrix(benchmark::State& state) {
  const Realization& r = real_of(static_cast<int>(state.range(0)));
  int depth = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(dual_matrix(r, depth));
}
BENCHMARK(BM_DualMatrix)->Args({2, 4})->Args({3, 3})->Args({12, 3});

// Correlator trace formulas.
static void BM_OnePoint(benchmark::State& state) {
  const Realization& r = real_of(static_cast<int>(state.range(0)));
  int kmax = static_cast<int>(state.range(1));
  Theory th = static_cast<int>(state.range(0)) < 10 ? Theory::RSpin : Theory::DS;
  for (auto _ : state) benchmark::DoNotOptimize(one_point(r, 0, kmax, th));
}
BENCHMARK(BM_OnePoint)->Args({1, 10})->Args({2, 14})->Args({12, 9});

static void BM_TwoPoint(benchmark::State& state) {
  const Realization& r = real_of(static_cast<int>(state.range(0)));
  int ktotal = static_cast<int>(state.range(1));
  for (auto _ : state)
    benchmark::DoNotOptimize(multi_point(r, {0, 0}, ktotal, Theory::RSpin));
}
BENCHMARK(BM_TwoPoint)->Args({1, 6})->Args({2, 4});

BENCHMARK_MAIN();
