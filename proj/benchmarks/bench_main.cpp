#include <benchmark/benchmark.h>

#include <numbers>

#include "pdproj/counterexample.hpp"
#include "pdproj/fourier.hpp"

using namespace pdproj;

static void BM_Classify(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Space s = Space::euclidean(3);
  const auto G = gram(ScalarKernel::gaussian(s, 1.0), sample_distinct(s, n, 0.05, 1, {.radius = 3.0}));
  for (auto _ : state) benchmark::DoNotOptimize(classify(G));
}
BENCHMARK(BM_Classify)->Arg(8)->Arg(32)->Arg(128);

static void BM_BlockedGram(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Space c = Space::circle();
  const auto C = build_unitary(ScalarKernel::circle_exp_cos(c), SymmetryMap::circle_rotation(1.0, c));
  const auto pts = sample_distinct(c, n, 0.01, 2);
  for (auto _ : state) benchmark::DoNotOptimize(gram(C.as_matrix, pts));
}
BENCHMARK(BM_BlockedGram)->Arg(8)->Arg(64);

static void BM_OrbitDecompose(benchmark::State& state) {
  const Space r2 = Space::euclidean(2);
  const auto phi = SymmetryMap::translation(r2, {1.0, 0.0});
  std::vector<Point> pts;
  for (int i = 0; i < state.range(0); ++i) pts.push_back(Point::euclidean({static_cast<double>(i / 2), 0.5 * (i % 2)}));
  for (auto _ : state) benchmark::DoNotOptimize(orbit_decompose(phi, pts));
}
BENCHMARK(BM_OrbitDecompose)->Arg(10)->Arg(100);

static void BM_Analyze(benchmark::State& state) {
  const Space g = Space::finite_abelian({static_cast<int>(state.range(0))});
  std::vector<Complex> psi(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < psi.size(); ++i) psi[i] = std::exp(-0.1 * static_cast<double>(i));
  for (auto _ : state) benchmark::DoNotOptimize(analyze(psi, g));
}
BENCHMARK(BM_Analyze)->Arg(24)->Arg(256);
BENCHMARK_MAIN();
