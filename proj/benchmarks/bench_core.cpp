#include <benchmark/benchmark.h>

#include "qharness/commutation.hpp"
#include "qharness/generator.hpp"
#include "qharness/process.hpp"
#include "qharness/quadrature.hpp"

using namespace qh;
using R = Rational;

namespace {

QHParams<R> bench_params() { return {R("1/3"), R("1/4"), R("1/6"), R("1/2")}; }

void BM_SeqMul(benchmark::State& state) {
  int L = state.range(0);
  auto W1 = seq_W(1, R("1/2"), R("1/3"), L);
  auto W2 = seq_W(2, R("1/2"), R("1/3"), L);
  for (auto _ : state) benchmark::DoNotOptimize(mul(W1, W2));
  state.SetComplexityN(L);
}

void BM_SolveH(benchmark::State& state) {
  int L = state.range(0);
  auto p = bench_params();
  for (auto _ : state) benchmark::DoNotOptimize(solve_H(p, R(2), L));
  state.SetComplexityN(L);
}

void BM_GolubWelsch(benchmark::State& state) {
  int n = state.range(0);
  auto J = nu_jacobi(bench_params(), R("1/2"), R(1), n).cast<double>();
  for (auto _ : state) benchmark::DoNotOptimize(golub_welsch(J, n, 1.0));
}

void BM_ClassifyNu(benchmark::State& state) {
  auto p = bench_params();
  for (auto _ : state) benchmark::DoNotOptimize(classify_nu(p, R("1/2"), R(1)));
}

void BM_GeneratorMoments(benchmark::State& state) {
  auto p = bench_params();
  Poly<R> f(std::vector<R>{R(0), R(-1), R(2), R(1), R(5)});
  for (auto _ : state)
    benchmark::DoNotOptimize(apply_generator_moments(p, R("1/2"), R(1), f));
}

}  // namespace

BENCHMARK(BM_SeqMul)->RangeMultiplier(2)->Range(8, 32)->Complexity();
BENCHMARK(BM_SolveH)->RangeMultiplier(2)->Range(8, 32)->Complexity();
BENCHMARK(BM_GolubWelsch)->RangeMultiplier(2)->Range(8, 64);
BENCHMARK(BM_ClassifyNu);
BENCHMARK(BM_GeneratorMoments);

BENCHMARK_MAIN();
