// Serial reference vs OpenMP kernels. Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>
#include <omp.h>

#include "tpbvp/operator.hpp"
#include "tpbvp/reference.hpp"
#include "tpbvp/verify.hpp"

namespace {

using namespace tpbvp;

const ProblemParams kParams(1.5, 0.5);
constexpr const char* kF = "(t^2+1)*(exp(-y)+sqrt(abs(yp)))";

GridFunction input(int n) {
  return GridFunction::sample(problem_nodes(kParams, n), [](double t) { return t * t; },
                              [](double t) { return 2 * t; });
}

void BM_certify_serial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(reference::certify_kernel(kParams, n));
  state.SetItemsProcessed(state.iterations() * 4 * n * n);
}

void BM_certify_openmp(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(certify_kernel(kParams, n));
  state.SetItemsProcessed(state.iterations() * 4 * n * n);
  state.counters["threads"] = omp_get_max_threads();
}

void BM_apply_serial(benchmark::State& state) {
  const auto v = input(static_cast<int>(state.range(0)));
  const Expr f = parse(kF);
  for (auto _ : state) benchmark::DoNotOptimize(reference::apply_operator(kParams, f, v, QuadratureRule()));
}

void BM_apply_openmp(benchmark::State& state) {
  const auto v = input(static_cast<int>(state.range(0)));
  const Expr f = parse(kF);
  for (auto _ : state) benchmark::DoNotOptimize(apply_operator(kParams, f, v, QuadratureRule()));
  state.counters["threads"] = omp_get_max_threads();
}

}  // namespace

BENCHMARK(BM_certify_serial)->Arg(101)->Arg(401)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_certify_openmp)->Arg(101)->Arg(401)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_apply_serial)->Arg(65)->Arg(257)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_apply_openmp)->Arg(65)->Arg(257)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
