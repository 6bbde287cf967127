#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "equiloc/builtins.hpp"
#include "equiloc/localization.hpp"
#include "equiloc/parallel.hpp"
#include "equiloc/quadrature.hpp"
#include "equiloc/witten.hpp"

using namespace equiloc;

namespace {

void BM_Quadrature(benchmark::State& state) {
  QuadratureOptions opts;
  opts.parallel = state.range(0) != 0;
  opts.abs_tol = 1e-12;
  auto f = [](double x) { return std::polar(1.0, 400.0 * x) * std::exp(-x * x); };
  for (auto _ : state) benchmark::DoNotOptimize(integrate(f, -3.0, 3.0, opts).value);
}
BENCHMARK(BM_Quadrature)->Arg(0)->Arg(1)->ArgNames({"parallel"});

void BM_Character(benchmark::State& state) {
  set_thread_count(state.range(0) ? 0 : 1);
  auto p = find_builtin("dim6").build();
  for (auto _ : state) benchmark::DoNotOptimize(character(p, 12));
  set_thread_count(0);
}
BENCHMARK(BM_Character)->Arg(0)->Arg(1)->ArgNames({"parallel"});

void BM_WittenPair(benchmark::State& state) {
  WittenOptions opts;
  opts.parallel = state.range(0) != 0;
  auto p = find_builtin("cp001").build();
  auto rho = equivariant_todd(p);
  auto phi = default_bump();
  for (auto _ : state) benchmark::DoNotOptimize(witten_pair(p, rho, phi, 32, opts));
}
BENCHMARK(BM_WittenPair)->Arg(0)->Arg(1)->ArgNames({"parallel"})->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
