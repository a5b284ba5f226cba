#include <benchmark/benchmark.h>

#include <cstddef>
#include <vector>

#include "mmon/fleet.hpp"
#include "mmon/generator.hpp"
#include "mmon/machine_params.hpp"
#include "mmon/metrics.hpp"
#include "mmon/similarity_map.hpp"
#include "mmon/simplex.hpp"
#include "mmon/simulator.hpp"
#include "mmon/stationary.hpp"
#include "mmon/waf_allocator.hpp"
#include "mmon/war_allocator.hpp"

namespace {

using namespace mmon;

const MachineParams kReference{2.0, 0.5, 0.5, 0.5};

FleetSpec mixed_fleet(std::size_t n, double budget) {
  FleetSpec fleet;
  for (std::size_t i = 0; i < n; ++i) {
    fleet.machines.push_back(make_bg_machine(1.0 + (i % 3), 0.5 + 0.25 * (i % 4),
                                             0.5 + 0.5 * (i % 2)));
    fleet.w.push_back(1.0 / static_cast<double>(n));
  }
  fleet.budget = budget;
  return fleet;
}

void BM_StationarySolve(benchmark::State& state) {
  const GeneratorMatrix gen = build_generator(kReference, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_stationary(gen));
  }
}
BENCHMARK(BM_StationarySolve);

void BM_ClosedFormMetrics(benchmark::State& state) {
  double mu = 0.01;
  for (auto _ : state) {
    benchmark::DoNotOptimize(far_closed(kReference, mu));
    benchmark::DoNotOptimize(frr_closed(kReference, mu));
    benchmark::DoNotOptimize(freshness_bg(kReference, mu));
    mu += 1e-9;
  }
}
BENCHMARK(BM_ClosedFormMetrics);

void BM_WaterFill(benchmark::State& state) {
  const FleetSpec fleet = mixed_fleet(static_cast<std::size_t>(state.range(0)),
                                      0.5 * state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(water_fill(fleet));
  }
}
BENCHMARK(BM_WaterFill)->RangeMultiplier(4)->Range(2, 128);

void BM_ProjectSimplex(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = (i % 7) - 3.0 + 0.01 * static_cast<double>(i);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(project_simplex(v, 1.0));
  }
}
BENCHMARK(BM_ProjectSimplex)->RangeMultiplier(8)->Range(8, 4096);

void BM_DescentFromCenter(benchmark::State& state) {
  const FleetSpec fleet = mixed_fleet(3, 3.0);
  Allocation center;
  center.mu.assign(3, 1.0);
  const PgdConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pgd(fleet, center, cfg));
  }
}
BENCHMARK(BM_DescentFromCenter);

void BM_SimulateShort(benchmark::State& state) {
  SimConfig cfg;
  cfg.horizon = 1000.0;
  cfg.replications = 1;
  cfg.seed = 1;
  const SimilarityMap map = SimilarityMap::busy_equiv();
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate(kReference, 1.0, map, cfg));
  }
}
BENCHMARK(BM_SimulateShort);

}  // namespace

BENCHMARK_MAIN();
