#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "schur/metric_families.hpp"
#include "schur/scalar_calculus.hpp"
#include "schur/schur_audit.hpp"
#include "schur/second_variation.hpp"

namespace {

using namespace schur;

void BM_Curvature(benchmark::State& state) {
  const auto p = conformal_zonal(4, 4, 0.01, static_cast<std::size_t>(state.range(0))).profile;
  for (auto _ : state) benchmark::DoNotOptimize(curvature(p));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Curvature)->RangeMultiplier(4)->Range(1024, 65536)->Complexity(benchmark::oN);

void BM_SolvePoisson(benchmark::State& state) {
  const auto p = conformal_zonal(4, 4, 0.01, static_cast<std::size_t>(state.range(0))).profile;
  const auto curv = curvature(p);
  const auto quad = Quadrature::for_profile(p);
  const double Rbar = integrate(curv.R, quad) / quad.volume();
  std::vector<double> h(curv.R.size());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = curv.R[i] - Rbar;
  for (auto _ : state) benchmark::DoNotOptimize(solve_poisson(p, h));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolvePoisson)->RangeMultiplier(4)->Range(1024, 65536)->Complexity(benchmark::oN);

void BM_AuditNeck(benchmark::State& state) {
  NeckSpec spec;
  spec.n = 5;
  spec.eps = 0.1;
  const auto p = neck(spec, static_cast<std::size_t>(state.range(0))).profile;
  for (auto _ : state) benchmark::DoNotOptimize(audit(p));
}
BENCHMARK(BM_AuditNeck)->Arg(4096)->Arg(16384);

void BM_FdStencil(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(fd_stencil(3, 4, 1e-3, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_FdStencil)->Arg(2048)->Arg(8192)->Unit(benchmark::kMillisecond);

void BM_ClosedFormSecondDerivative(benchmark::State& state) {
  double lambda = 24.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(F_second_derivative(3, 8.95, lambda));
    benchmark::ClobberMemory();
  }
}
BENCHMARK(BM_ClosedFormSecondDerivative);

}  // namespace

BENCHMARK_MAIN();
