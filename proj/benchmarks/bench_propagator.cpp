#include <benchmark/benchmark.h>

#include "synchrony/kinematics.hpp"
#include "synchrony/propagator.hpp"

using namespace synchrony;
using namespace synchrony::propagator;

static void BM_IntegrandResynced(benchmark::State& state) {
  const MomentumSample k{1.3, Vec3(0.4, -2.0, 0.9)};
  const SyncParam a = SyncParam::from_vector(Vec3(0.3, -0.1, 0.6), "bench");
  const PropagatorPoint p{resynchronize(Event4::make(1.0, Vec3(0.5, 0.2, -0.7)), a), 1.0, 1e-3};
  for (auto _ : state) benchmark::DoNotOptimize(integrand_resynced(k, p));
}
BENCHMARK(BM_IntegrandResynced);

static void BM_MiddleFormCheck(benchmark::State& state) {
  const MomentumSample k{1.3, Vec3(0.4, -2.0, 0.9)};
  const SyncParam a = SyncParam::from_vector(Vec3(0.3, -0.1, 0.6), "bench");
  const PropagatorPoint p{resynchronize(Event4::make(1.0, Vec3(0.5, 0.2, -0.7)), a), 1.0, 1e-3};
  for (auto _ : state) benchmark::DoNotOptimize(middle_form_check(k, p));
}
BENCHMARK(BM_MiddleFormCheck);

static void BM_Quadrature1p1(benchmark::State& state) {
  const QuadratureGrid grid{20.0, static_cast<int>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(propagator_quadrature_1p1(1.0, 0.5, 1.0, 0.05, 0.7, grid));
}
BENCHMARK(BM_Quadrature1p1)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);
