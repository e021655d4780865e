#include <cmath>
#include <vector>

#include <benchmark/benchmark.h>

#include "speedlimit/bounds.hpp"
#include "speedlimit/fokker_planck.hpp"
#include "speedlimit/liouville.hpp"
#include "speedlimit/master_eq.hpp"

using namespace speedlimit;

namespace {

PhaseGrid square_grid(int n) {
  const GaussianParams g{2.0, 1.0, 0.5, 0.0};
  return harmonic_orbit_grid(g, 1.0, 1.0, 1.0, n, n);
}

void BM_BuildLiouvillian(benchmark::State& state) {
  const auto grid = square_grid(static_cast<int>(state.range(0)));
  const auto h = SeparableHamiltonian::harmonic(1.0, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(build_liouvillian(h, grid));
  state.SetLabel(std::to_string(grid.size()) + " nodes");
}
BENCHMARK(BM_BuildLiouvillian)->Arg(16)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_LiouvillianEigensystem(benchmark::State& state) {
  const auto grid = square_grid(static_cast<int>(state.range(0)));
  const auto op = build_liouvillian(SeparableHamiltonian::harmonic(1.0, 1.0), grid);
  for (auto _ : state) benchmark::DoNotOptimize(eigensystem(op));
}
BENCHMARK(BM_LiouvillianEigensystem)->Arg(16)->Arg(24)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_OverlapCurve(benchmark::State& state) {
  const GaussianParams g{2.0, 1.0, 0.5, 0.0};
  const auto grid = square_grid(24);
  const auto op = build_liouvillian(SeparableHamiltonian::harmonic(1.0, 1.0), grid);
  const auto decomp = spectral_decompose(op, power_state(gaussian_state(grid, g), 1.0));
  std::vector<double> times(static_cast<std::size_t>(state.range(0)));
  for (std::size_t k = 0; k < times.size(); ++k) times[k] = 0.05 * static_cast<double>(k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(overlap_curve(decomp, times, EvolutionMode::unitary));
  }
}
BENCHMARK(BM_OverlapCurve)->Arg(64)->Arg(512);

void BM_OuSpectrum(benchmark::State& state) {
  const DriftPotential w(Polynomial({0.0, 0.0, 0.5}), -8.0, 8.0,
                         static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(eigensystem(build_hf(w)));
}
BENCHMARK(BM_OuSpectrum)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

void BM_EvolveMaster(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto chain = random_detailed_balance_chain(n, 3);
  RealVector p0 = RealVector::Zero(n);
  p0[0] = 1.0;
  std::vector<double> times(64);
  for (std::size_t k = 0; k < times.size(); ++k) times[k] = 0.1 * static_cast<double>(k);
  for (auto _ : state) benchmark::DoNotOptimize(evolve_master(chain, p0, times));
}
BENCHMARK(BM_EvolveMaster)->Arg(4)->Arg(16)->Arg(64);

void BM_ClassicalBounds(benchmark::State& state) {
  BoundInputs in;
  in.norm0 = 1.0;
  in.overlap_t = 0.3;
  in.moment2 = 2.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(csl_ml_type(in));
    benchmark::DoNotOptimize(csl_mt_type(in));
  }
}
BENCHMARK(BM_ClassicalBounds);

}  // namespace
