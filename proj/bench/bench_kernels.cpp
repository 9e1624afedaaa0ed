// Serial reference kernels against their OpenMP counterparts on growing grids.

#include <benchmark/benchmark.h>

#include <cmath>

#include "leibenson/evolution.hpp"
#include "leibenson/kernels.hpp"

namespace {

using namespace leibenson;

struct Fixture {
  RadialGrid grid;
  Field u;

  explicit Fixture(std::size_t n) : grid(ModelManifold::hyperbolic(3, 1.0), 8.0, n), u(n) {
    const auto r = grid.centers();
    for (std::size_t i = 0; i < n; ++i) {
      const double x = 1.0 - (r[i] / 6.0) * (r[i] / 6.0);
      u[i] = x > 0.0 ? x * x * x : 0.0;
    }
  }
};

void flux_divergence(benchmark::State& state, Backend backend, double p) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  Field out(f.grid.size());
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::flux_divergence(backend, f.grid, f.u, 2.0, p, out));
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void max_diffusivity(benchmark::State& state, Backend backend, double p) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::max_diffusivity(backend, f.grid, f.u, 2.0, p));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void full_step(benchmark::State& state, Backend backend) {
  const Fixture f(static_cast<std::size_t>(state.range(0)));
  EvolutionParams params;
  params.backend = backend;
  params.p = 2.5;
  const double dt = adaptive_dt(f.u, params, f.grid);
  for (auto _ : state) {
    benchmark::DoNotOptimize(step(f.u, params, f.grid, dt));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

constexpr long kMin = 1 << 10;
constexpr long kMax = 1 << 18;

BENCHMARK_CAPTURE(flux_divergence, serial_p2, Backend::serial, 2.0)->Range(kMin, kMax);
BENCHMARK_CAPTURE(flux_divergence, openmp_p2, Backend::openmp, 2.0)->Range(kMin, kMax);
BENCHMARK_CAPTURE(flux_divergence, serial_p2_5, Backend::serial, 2.5)->Range(kMin, kMax);
BENCHMARK_CAPTURE(flux_divergence, openmp_p2_5, Backend::openmp, 2.5)->Range(kMin, kMax);
BENCHMARK_CAPTURE(max_diffusivity, serial_p1_5, Backend::serial, 1.5)->Range(kMin, kMax);
BENCHMARK_CAPTURE(max_diffusivity, openmp_p1_5, Backend::openmp, 1.5)->Range(kMin, kMax);
BENCHMARK_CAPTURE(full_step, serial, Backend::serial)->Range(kMin, kMax);
BENCHMARK_CAPTURE(full_step, openmp, Backend::openmp)->Range(kMin, kMax);

}  // namespace

BENCHMARK_MAIN();
