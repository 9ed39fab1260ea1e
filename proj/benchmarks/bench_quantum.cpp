#include <benchmark/benchmark.h>

#include "synchrony/quantum.hpp"
#include "synchrony/random_scenario.hpp"

using namespace synchrony::quantum;

static void BM_Evolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ScenarioGenerator gen(1);
  const Matrix h = gen.hermitian(n);
  const Vector psi = gen.unit_vector(n);
  for (auto _ : state) benchmark::DoNotOptimize(evolve(psi, h, 0.7));
}
BENCHMARK(BM_Evolve)->Arg(4)->Arg(9)->Arg(16)->Arg(64);

static void BM_AmplitudeOrdered(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  ScenarioGenerator gen(2);
  const QuantumScenario s = gen.commuting(d, d);
  for (auto _ : state) benchmark::DoNotOptimize(amplitude_ordered(s, Order::a_first));
}
BENCHMARK(BM_AmplitudeOrdered)->Arg(2)->Arg(3)->Arg(4)->Arg(8);

static void BM_AmplitudeFactored(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  ScenarioGenerator gen(3);
  const QuantumScenario s = gen.commuting(d, d);
  for (auto _ : state) benchmark::DoNotOptimize(amplitude_factored(s, Order::a_first));
}
BENCHMARK(BM_AmplitudeFactored)->Arg(2)->Arg(3)->Arg(4)->Arg(8);

static void BM_Marginal(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  ScenarioGenerator gen(4);
  const QuantumScenario s = gen.commuting(d, d);
  const MeasurementSetting remote = gen.measurement(d);
  const MeasurementSetting local = gen.measurement(d);
  for (auto _ : state) benchmark::DoNotOptimize(marginal_distribution(s, &remote, local));
}
BENCHMARK(BM_Marginal)->Arg(2)->Arg(4);
