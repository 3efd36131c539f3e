#include <benchmark/benchmark.h>

#include "purosc/dynamics.hpp"
#include "purosc/entropy.hpp"
#include "purosc/purity.hpp"

using namespace purosc;

namespace {

const KGCoefficients kKg =
    KGCoefficients::constant(1.0, 1.0, 0.2, 0.05, 0.1, 1.0);
const LindbladParams kLp = purity_preserving_diffusion(0.1, 0.3, 1.0, 1.0);
const GaussianState kState{0.1, -0.2, 1.0, 0.9, 0.1};

void BM_KGMomentDerivatives(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(kg_moment_derivatives(kState, kKg, 0.5));
  }
}
BENCHMARK(BM_KGMomentDerivatives);

void BM_AnalyticPropagator(benchmark::State& state) {
  double t = 0.0;
  for (auto _ : state) {
    t += 1e-3;
    benchmark::DoNotOptimize(kg_analytic_propagator(kKg, t).apply(kState));
  }
}
BENCHMARK(BM_AnalyticPropagator);

void BM_IntegrateRK4(benchmark::State& state) {
  const auto grid = linspace(0.0, 10.0, 2);
  IntegratorOptions opts;
  opts.dt = 10.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(kKg, kState, grid, opts));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_IntegrateRK4)->Arg(1000)->Arg(10000);

void BM_IntegrateRK45(benchmark::State& state) {
  const auto grid = linspace(0.0, 10.0, 2);
  IntegratorOptions opts;
  opts.method = IntegratorOptions::Method::rk45;
  opts.rel_tol = 1e-9;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(kKg, kState, grid, opts));
  }
}
BENCHMARK(BM_IntegrateRK45);

void BM_LindbladSteadyState(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(lindblad_steady_state(kLp));
  }
}
BENCHMARK(BM_LindbladSteadyState);

void BM_EntropyRate(benchmark::State& state) {
  const ModelVariant model = kLp;
  for (auto _ : state) {
    benchmark::DoNotOptimize(model_entropy_rate(kState, model, 0.0));
  }
}
BENCHMARK(BM_EntropyRate);

}  // namespace

BENCHMARK_MAIN();
