// Micro-benchmarks for the hot paths: characteristic-function evaluation
// (dominates eigenvalue search), main-equation assembly and solve (dominate
// reconstruction), and one full reconstruction node sweep.

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>

#include "specmap/direct.hpp"
#include "specmap/main_equation.hpp"
#include "specmap/spectral_core.hpp"
#include "specmap/types.hpp"

namespace {

using specmap::complex;
using specmap::PI;

specmap::ProblemTriple constant_triple(int grid_nodes) {
  specmap::ProblemTriple P;
  P.q = specmap::GridFunction::constant({0.5, 0.0}, grid_nodes);
  P.h = complex{0.0, 0.0};
  P.H = complex{0.0, 0.0};
  return P;
}

specmap::SpectralData constant_data(int count) {
  specmap::SpectralData S;
  for (int n = 1; n <= count; ++n) {
    const double k = n - 1.0;
    S.rho.push_back({std::sqrt(k * k + 0.5), 0.0});
    S.alpha.push_back(specmap::model_alpha(n));
  }
  S.omega = complex{PI / 4.0, 0.0};
  return S;
}

void bm_char_delta(benchmark::State& state) {
  const auto P = constant_triple(static_cast<int>(state.range(0)));
  const complex rho{7.3, 0.2};
  for (auto _ : state) {
    benchmark::DoNotOptimize(specmap::char_delta(P, rho));
  }
}
BENCHMARK(bm_char_delta)->Arg(512)->Arg(2048)->Arg(8192);

void bm_build_system(benchmark::State& state) {
  const auto S = constant_data(static_cast<int>(state.range(0)));
  const int n_trunc = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        specmap::build_system(S, n_trunc, PI / 3.0, true));
  }
}
BENCHMARK(bm_build_system)->Arg(10)->Arg(20)->Arg(40);

void bm_solve_system(benchmark::State& state) {
  const auto S = constant_data(static_cast<int>(state.range(0)));
  const auto system =
      specmap::build_system(S, static_cast<int>(state.range(0)), PI / 3.0,
                            true);
  for (auto _ : state) {
    benchmark::DoNotOptimize(specmap::solve_system(system, false));
  }
}
BENCHMARK(bm_solve_system)->Arg(10)->Arg(20)->Arg(40);

void bm_reconstruction(benchmark::State& state) {
  const auto S = constant_data(12);
  specmap::ReconstructConfig config;
  config.n_trunc = 12;
  config.grid_nodes = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(specmap::epsilon_and_reconstruct(S, config));
  }
}
BENCHMARK(bm_reconstruction)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
