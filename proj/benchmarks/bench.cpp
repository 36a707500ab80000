#include <benchmark/benchmark.h>

#include <random>

#include "extri/chain.hpp"
#include "extri/lin_triangle.hpp"
#include "extri/moduli_enum.hpp"
#include "extri/snf.hpp"

using namespace extri;

namespace {

IntMatrix random_matrix(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> e(-9, 9);
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = e(rng);
  return m;
}

void BM_Snf(benchmark::State& state) {
  IntMatrix m = random_matrix(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_Snf)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

// Lens-space style complex repeated n times.
void BM_Homology(benchmark::State& state) {
  std::size_t n = static_cast<std::size_t>(state.range(0));
  IntMatrix d2(n, n);
  for (std::size_t i = 0; i < n; ++i) d2(i, i) = static_cast<long>(i + 2);
  ZComplex c(0, {{0, n}, {1, n}, {2, n}, {3, n}}, {{2, d2}});
  for (auto _ : state) benchmark::DoNotOptimize(homology(c));
}
BENCHMARK(BM_Homology)->Arg(4)->Arg(16)->Arg(64);

void BM_LinPipeline(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    TriangleHypotheses h = generate_valid_instance(seed++ % 100);
    benchmark::DoNotOptimize(verify_hypotheses(h).all_passed());
    benchmark::DoNotOptimize(run_six_step_ss(build_phi_cone(h), 2).ok());
  }
}
BENCHMARK(BM_LinPipeline);

void BM_Lattice(benchmark::State& state) {
  LatticeProblem p;
  for (int i = 0; i < state.range(0); ++i) p.offsets.push_back(Rational(1, 4));
  p.target = 25;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_reducibles(p));
}
BENCHMARK(BM_Lattice)->Arg(2)->Arg(3)->Arg(4);

}  // namespace
BENCHMARK_MAIN();
