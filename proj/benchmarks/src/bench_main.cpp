// Microbenchmarks for the hot paths: coefficient quadratures, the
// superoperator propagator, momentum sampling, counter-mode RNG blocks, and
// full stochastic trajectories.

#include <benchmark/benchmark.h>

#include "spingas/cm.hpp"
#include "spingas/colsim.hpp"
#include "spingas/ldl.hpp"
#include "spingas/liouville.hpp"
#include "spingas/model.hpp"
#include "spingas/potential.hpp"
#include "spingas/rng.hpp"

namespace {

using namespace spingas;

SpinModel dephasing_model() {
  SpinModel m;
  m.dim_s = 2;
  m.dim_g = 2;
  m.h_s = Matrix::Zero(2, 2);
  m.h_s(0, 0) = 0.5;
  m.h_s(1, 1) = -0.5;
  m.f = Matrix::Zero(4, 4);
  m.f(0, 0) = 1.0;
  m.f(1, 1) = -1.0;
  m.f(2, 2) = -1.0;
  m.f(3, 3) = 1.0;
  m.mu = Eigen::Vector2d(0.5, 0.5);
  return m;
}

const GasParameters kGas{0.01, 100.0, 0.05};

void bm_gamma_gaussian(benchmark::State& state) {
  const auto pot = gaussian_potential(kGas.u);
  for (auto _ : state)
    benchmark::DoNotOptimize(gamma_quadrature(pot, kGas));
}
BENCHMARK(bm_gamma_gaussian);

void bm_gamma_squarewell(benchmark::State& state) {
  const auto pot = squarewell_potential(kGas.u);
  for (auto _ : state)
    benchmark::DoNotOptimize(gamma_quadrature(pot, kGas));
}
BENCHMARK(bm_gamma_squarewell);

void bm_c2_squarewell(benchmark::State& state) {
  const auto pot = squarewell_potential(kGas.u);
  for (auto _ : state) benchmark::DoNotOptimize(cm_c2(pot, kGas));
}
BENCHMARK(bm_c2_squarewell);

void bm_c2_logkernel(benchmark::State& state) {
  const auto pot = squarewell_potential(kGas.u);
  for (auto _ : state) benchmark::DoNotOptimize(cm_c2_logkernel(pot, kGas));
}
BENCHMARK(bm_c2_logkernel);

void bm_line_integral(benchmark::State& state) {
  const auto pot = gaussian_potential(kGas.u);
  for (auto _ : state)
    benchmark::DoNotOptimize(line_integral(pot, 10.0, 0.5));
}
BENCHMARK(bm_line_integral);

void bm_expm_propagation(benchmark::State& state) {
  const SpinModel m = dephasing_model();
  const GkslGenerator gen =
      build_generator(m, Matrix::Zero(2, 2), 1.25e-5);
  DensityMatrix rho0;
  rho0.rho = Matrix(2, 2);
  rho0.rho << 0.5, 0.5, 0.5, 0.5;
  for (auto _ : state)
    benchmark::DoNotOptimize(
        evolve(gen, rho0, 5000.0, EvolveMethod::Expm));
}
BENCHMARK(bm_expm_propagation);

void bm_momentum_sampler_build(benchmark::State& state) {
  for (auto _ : state) {
    MomentumSampler sampler(100.0);
    benchmark::DoNotOptimize(sampler);
  }
}
BENCHMARK(bm_momentum_sampler_build);

void bm_momentum_sampler_draw(benchmark::State& state) {
  const MomentumSampler sampler(100.0);
  TrajectoryRng rng(7, 0);
  for (auto _ : state)
    benchmark::DoNotOptimize(sampler.sample(rng.next_double()));
}
BENCHMARK(bm_momentum_sampler_draw);

void bm_rng_block(benchmark::State& state) {
  TrajectoryRng rng(7, 0);
  for (auto _ : state) {
    double acc = 0.0;
    for (int i = 0; i < 256; ++i) acc += rng.next_double();
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(bm_rng_block);

void bm_ensemble_trajectories(benchmark::State& state) {
  const SpinModel m = dephasing_model();
  const auto pot = squarewell_potential(kGas.u);
  DensityMatrix rho0;
  rho0.rho = Matrix(2, 2);
  rho0.rho << 0.5, 0.5, 0.5, 0.5;
  SimConfig cfg;
  cfg.trajectories = static_cast<int>(state.range(0));
  cfg.t_end = 1000.0;
  cfg.seed = 7;
  for (auto _ : state)
    benchmark::DoNotOptimize(run_ensemble(m, pot, kGas, cfg, rho0));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bm_ensemble_trajectories)->Arg(16)->Arg(64);

}  // namespace

BENCHMARK_MAIN();
