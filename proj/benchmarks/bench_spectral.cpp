#include <benchmark/benchmark.h>

#include <random>

#include "hvci/anti_divergence.hpp"
#include "hvci/geometry.hpp"
#include "hvci/spectral.hpp"
#include "hvci/waves.hpp"

using namespace hvci;

namespace {

VectorField random_vector(int n, int band) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  VectorField u(n);
  for (int c = 0; c < 3; ++c) {
    u[c] = ScalarField(n, band);
    for (int kx = -band; kx <= band; ++kx)
      for (int ky = -band; ky <= band; ++ky)
        for (int kz = 1; kz <= band; ++kz) u[c].set_coeff({kx, ky, kz}, Complex(g(rng), g(rng)));
  }
  return u;
}

void BM_DealiasedProduct(benchmark::State& state) {
  const int n = int(state.range(0));
  const VectorField u = random_vector(n, n / 4);
  for (auto _ : state) benchmark::DoNotOptimize(multiply_dealiased(u[0], u[1], n));
}
BENCHMARK(BM_DealiasedProduct)->Arg(32)->Arg(64)->Arg(96)->Unit(benchmark::kMillisecond);

void BM_OuterSquare(benchmark::State& state) {
  const int n = int(state.range(0));
  const VectorField u = random_vector(n, n / 4);
  for (auto _ : state) benchmark::DoNotOptimize(outer_square(u, n));
}
BENCHMARK(BM_OuterSquare)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_AntiDivergence(benchmark::State& state) {
  const int n = int(state.range(0));
  const VectorField u = random_vector(n, n / 2 - 1);
  for (auto _ : state) benchmark::DoNotOptimize(anti_div(u));
}
BENCHMARK(BM_AntiDivergence)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_LerayProjection(benchmark::State& state) {
  const int n = int(state.range(0));
  const VectorField u = random_vector(n, n / 2 - 1);
  for (auto _ : state) benchmark::DoNotOptimize(leray_project(u));
}
BENCHMARK(BM_LerayProjection)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_LebesgueNorm(benchmark::State& state) {
  const int n = int(state.range(0));
  const VectorField u = random_vector(n, n / 4);
  for (auto _ : state) benchmark::DoNotOptimize(lebesgue_norm(u, 1.5));
}
BENCHMARK(BM_LebesgueNorm)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_IntermittentPhase(benchmark::State& state) {
  WaveParams wp;
  wp.lambda = int(state.range(0));
  wp.sigma_inv = wp.lambda / 5;
  wp.r = wp.sigma_inv / 2;
  wp.mu = double(wp.lambda) * 2;
  const IntermittentPhase eta(directions()[0], wp);
  const int n = fit_grid(eta.band());
  double t = 0.0;
  for (auto _ : state) benchmark::DoNotOptimize(eta.field(t += 0.01, n));
}
BENCHMARK(BM_IntermittentPhase)->Arg(25)->Arg(50)->Unit(benchmark::kMillisecond);

void BM_GammaCoefficients(benchmark::State& state) {
  Sym3 r = identity_sym3();
  r[1] = 0.01;
  for (auto _ : state) {
    r[0] += 1e-12;
    benchmark::DoNotOptimize(gamma_coefficients(r));
  }
}
BENCHMARK(BM_GammaCoefficients);

}  // namespace

BENCHMARK_MAIN();
