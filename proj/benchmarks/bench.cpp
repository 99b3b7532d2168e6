#include <benchmark/benchmark.h>

#include "stockflow/compensator.hpp"
#include "stockflow/dissipativity.hpp"
#include "stockflow/engine.hpp"

namespace {

using namespace stockflow;

void BM_BuildOmega(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_omega(0.1, d));
  }
}
BENCHMARK(BM_BuildOmega)->Arg(5)->Arg(12);

void BM_EngineTick(benchmark::State& state) {
  Scenario scenario = reference_test("2-3");
  scenario.horizon = 1;
  const ClosedLoopModel model = build_model(scenario);
  NetworkState s = initial_state(model, scenario.initial);
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(12);
  Eigen::VectorXd u_a = Eigen::VectorXd::Zero(6);
  for (auto _ : state) {
    const RouteCommands cmds = route_commands(model, s);
    benchmark::DoNotOptimize(advance(model, s, u_a, zero));
    benchmark::DoNotOptimize(cmds);
  }
}
BENCHMARK(BM_EngineTick);

void BM_ExpectedDrift(benchmark::State& state) {
  Scenario scenario = reference_test("1");
  const ClosedLoopModel model = build_model(scenario);
  const NetworkState s = initial_state(model, scenario.initial);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        expected_drift(model, s, StorageKind::kErrorIdentity));
  }
}
BENCHMARK(BM_ExpectedDrift);

void BM_ExpectedDriftAugmented(benchmark::State& state) {
  Scenario scenario = reference_test("2-3");
  const ClosedLoopModel model = build_model(scenario);
  const NetworkState s = initial_state(model, scenario.initial);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        expected_drift(model, s, StorageKind::kAugmentedOmega));
  }
}
BENCHMARK(BM_ExpectedDriftAugmented);

}  // namespace

BENCHMARK_MAIN();
