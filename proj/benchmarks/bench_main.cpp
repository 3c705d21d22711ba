#include <benchmark/benchmark.h>

#include <numbers>

#include "nasq/as_geometry.hpp"
#include "nasq/nas_distance.hpp"
#include "nasq/nas_witness.hpp"
#include "nasq/qcore.hpp"
#include "nasq/states.hpp"

namespace {

using namespace nasq;

void BM_EigHermitian(benchmark::State& state) {
  const Eigen::Index d = state.range(0);
  const DensityMatrix rho = random_density({2, d}, 2 * d, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eig_hermitian(rho.mat()));
  }
}
BENCHMARK(BM_EigHermitian)->Arg(2)->Arg(4);

void BM_Fidelity(benchmark::State& state) {
  const DensityMatrix a = random_density({2, 2}, 4, 1);
  const DensityMatrix b = random_density({2, 2}, 4, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fidelity(a, b));
  }
}
BENCHMARK(BM_Fidelity);

void BM_AlignedMinimizer(benchmark::State& state) {
  const DensityMatrix rho = werner({0.8, std::numbers::pi / 5.0, 0.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(nas_numeric(rho,
                                         DistanceKind::relative_entropy(),
                                         {}, NasMethod::ConjectureAligned));
  }
}
BENCHMARK(BM_AlignedMinimizer);

void BM_FullMinimizer(benchmark::State& state) {
  const DensityMatrix rho = werner({0.8, std::numbers::pi / 5.0, 0.0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(nas_numeric(rho,
                                         DistanceKind::relative_entropy(),
                                         {}, NasMethod::FullNumeric));
  }
}
BENCHMARK(BM_FullMinimizer);

void BM_WitnessGrid(benchmark::State& state) {
  const DensityMatrix rho = werner({0.8, std::numbers::pi / 5.0, 0.0});
  WitnessConfig cfg;
  cfg.grid_points = int(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(nas_witness_measure(rho, cfg));
  }
}
BENCHMARK(BM_WitnessGrid)->Arg(16)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_BoundarySample(benchmark::State& state) {
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_boundary_spectrum(3, seed++));
  }
}
BENCHMARK(BM_BoundarySample);

}  // namespace

BENCHMARK_MAIN();
