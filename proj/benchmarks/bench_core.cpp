#include <complex>

#include <benchmark/benchmark.h>

#include "trapnls/grid.hpp"
#include "trapnls/hermite.hpp"
#include "trapnls/hessian.hpp"
#include "trapnls/oracle.hpp"
#include "trapnls/propagator.hpp"
#include "trapnls/wavelab.hpp"

namespace {

using namespace trapnls;

GridState ground_state(const GridSpec& grid, int cutoff) {
  const BasisSpec basis{grid.dim, 1.0, cutoff};
  return synthesize(unit_mode(basis, MultiIndex{std::vector<int>(grid.dim, 0)}),
                    grid);
}

void BM_Analyze(benchmark::State& state) {
  const GridSpec grid{1, 16.0, static_cast<int>(state.range(1))};
  const BasisSpec basis{1, 1.0, static_cast<int>(state.range(0))};
  const GridState u = ground_state(grid, 8);
  for (auto _ : state) benchmark::DoNotOptimize(analyze(u, basis));
  state.SetLabel("cutoff " + std::to_string(state.range(0)) + ", grid " +
                 std::to_string(state.range(1)));
}
BENCHMARK(BM_Analyze)->Args({32, 1024})->Args({64, 1024})->Args({64, 4096});

void BM_Synthesize(benchmark::State& state) {
  const GridSpec grid{1, 16.0, static_cast<int>(state.range(1))};
  const BasisSpec basis{1, 1.0, static_cast<int>(state.range(0))};
  const CoeffState c = unit_mode(basis, MultiIndex{std::vector<int>{0}});
  for (auto _ : state) benchmark::DoNotOptimize(synthesize(c, grid));
}
BENCHMARK(BM_Synthesize)->Args({32, 1024})->Args({64, 1024})->Args({64, 4096});

void BM_StrangStep(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const GridSpec grid{dim, 12.0, dim == 1 ? 1024 : 256};
  GridState u = ground_state(grid, 4);
  for (auto _ : state) {
    u = strang_step(u, 1e-3, 1.0, 1.0, Model::H);
    benchmark::DoNotOptimize(u.values.data());
  }
  state.SetLabel(dim == 1 ? "d=1 N=1024" : "d=2 N=256^2");
}
BENCHMARK(BM_StrangStep)->Arg(1)->Arg(2);

void BM_OracleSegment(benchmark::State& state) {
  // one sample segment at production step size: the inner loop reuses the
  // per-run phase tables, unlike repeated strang_step calls
  const GridSpec grid{1, 16.0, 1024};
  const GridState u = ground_state(grid, 8);
  for (auto _ : state)
    benchmark::DoNotOptimize(
        integrate(u, 1.0, 1.0, Model::H, 0.1, 1, 1e-3, 0.0));
}
BENCHMARK(BM_OracleSegment);

void BM_PropagatorAt(benchmark::State& state) {
  const GridSpec grid{1, 16.0, 1024};
  const SingleWave wave =
      single_peak(1.0, 1.0, 1.0, MultiIndex{std::vector<int>{2}},
                  Eigen::VectorXd::Constant(1, 0.3),
                  Eigen::VectorXd::Constant(1, -0.2), Model::H);
  const Propagator prop(wave.initial(grid), 1.0, 1.0, Model::H);
  double t = 0.0;
  for (auto _ : state) {
    t += 0.1;
    benchmark::DoNotOptimize(prop.at(t));
  }
}
BENCHMARK(BM_PropagatorAt);

void BM_ModulatedDistance(benchmark::State& state) {
  const GridSpec grid{1, 14.0, 512};
  const BasisSpec basis{1, 1.0, 48};
  const CoeffState phi = unit_mode(basis, MultiIndex{std::vector<int>{0}});
  GridState u = synthesize(phi, grid);
  u.values *= std::polar(1.0, 0.3);
  u = translate(u, Eigen::VectorXd::Constant(1, 0.05));
  for (auto _ : state) benchmark::DoNotOptimize(modulated_distance(phi, u, 1.0));
}
BENCHMARK(BM_ModulatedDistance);

void BM_AssembleHessian(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        assemble_hessian(HessianCase::I, 4, cutoff, Subspace::Even));
}
BENCHMARK(BM_AssembleHessian)->Arg(200)->Arg(400);

} // namespace

BENCHMARK_MAIN();
