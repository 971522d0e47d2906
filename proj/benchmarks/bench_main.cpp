#include <benchmark/benchmark.h>

#include "kgdelta/app/regions.hpp"
#include "kgdelta/app/scan.hpp"
#include "kgdelta/classify.hpp"
#include "kgdelta/lattice.hpp"

using namespace kgdelta;

static void BM_Classify(benchmark::State& state) {
  const ModelParams p(1.0, 0.6, 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(classify_point_spectrum(p));
}
BENCHMARK(BM_Classify);

static void BM_DenseScan(benchmark::State& state) {
  const ModelParams p(1.0, 0.3, 1.5);
  for (auto _ : state) benchmark::DoNotOptimize(app::dense_scan_roots(p));
}
BENCHMARK(BM_DenseScan);

static void BM_RegionScan(benchmark::State& state) {
  app::ScanConfig cfg;
  cfg.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(app::scan_cells(cfg));
}
BENCHMARK(BM_RegionScan)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_LatticeStep(benchmark::State& state) {
  const Nonlinearity nl(PowerLaw{1.0, 0.1});
  const Lattice lat(nl, 1.0, Grid(50.0, static_cast<std::size_t>(state.range(0))));
  auto s = discrete_stationary(nl, 1.0, 0.6, lat.grid()).state;
  const double dt = 0.4 * lat.grid().spacing();
  for (auto _ : state) lat.advance(s, dt, 1);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LatticeStep)->Arg(1001)->Arg(5001);

BENCHMARK_MAIN();
