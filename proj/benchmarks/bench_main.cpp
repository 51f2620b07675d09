#include <benchmark/benchmark.h>

#include "wfock/dilation.hpp"
#include "wfock/kernels.hpp"

using namespace wfock;

namespace {

WeightSequence bench_weights() {
  Rng rng(12345);
  return random_admissible(rng, 2, 2);
}

void BM_RadialRecursion(benchmark::State& state) {
  const WeightSequence x = bench_weights();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(radial_from_recursion(x, n));
  }
}
BENCHMARK(BM_RadialRecursion)->Arg(4)->Arg(6)->Arg(8);

void BM_RadialCompositions(benchmark::State& state) {
  const WeightSequence x = bench_weights();
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(radial_from_compositions(x, n));
  }
}
BENCHMARK(BM_RadialCompositions)->Arg(4)->Arg(6);

void BM_SymmetricFrame(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(symmetric_frame(2, k));
  }
}
BENCHMARK(BM_SymmetricFrame)->Arg(6)->Arg(10);

void BM_BuildShift(benchmark::State& state) {
  const WeightSequence x = bench_weights();
  const int n = static_cast<int>(state.range(0));
  const RadialData rd = radial_from_recursion(x, n);
  const FockFrame frame = build_frame(rd, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_shift(frame, rd));
  }
}
BENCHMARK(BM_BuildShift)->Arg(4)->Arg(6);

void BM_KernelMap(benchmark::State& state) {
  const WeightSequence x = bench_weights();
  const RadialData rd = radial_from_recursion(x, 4);
  Rng rng(7);
  const OperatorTuple t = random_commuting_tuple(rng, x, 2, 0.05);
  const OperatorTuple l = random_commuting_tuple(rng, x, 2, 0.05);
  const CMat a = rng.cgaussian_matrix(2, 2);
  KernelOptions opts;
  opts.tol = 1e-9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernel_map(rd, t, l, a, opts));
  }
}
BENCHMARK(BM_KernelMap);

void BM_PoissonDilation(benchmark::State& state) {
  const WeightSequence x = bench_weights();
  Rng rng(9);
  const OperatorTuple t = random_commuting_tuple(rng, x, 3, 0.03);
  PoissonOptions opts;
  opts.tol = 1e-8;
  for (auto _ : state) {
    RadialData rd = radial_from_recursion(x, 2);
    benchmark::DoNotOptimize(poisson(t, rd, opts));
  }
}
BENCHMARK(BM_PoissonDilation);

void BM_ChoiAssembly(benchmark::State& state) {
  const WeightSequence x = bench_weights();
  const RadialData rd = radial_from_recursion(x, 4);
  Rng rng(11);
  std::vector<OperatorTuple> points;
  for (int i = 0; i < 4; ++i) points.push_back(random_commuting_tuple(rng, x, 2, 0.1));
  KernelOptions opts;
  opts.tol = 1e-8;
  const KernelSample sample = sample_kernel(rd, points, opts);
  for (auto _ : state) {
    benchmark::DoNotOptimize(choi_cp_check(sample));
  }
}
BENCHMARK(BM_ChoiAssembly);

}  // namespace

BENCHMARK_MAIN();
