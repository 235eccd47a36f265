// Microbenchmarks for the hot paths: the SU(2) propagator, the optimizer
// cost function, error-curve construction and RB sequence survival.

#include <benchmark/benchmark.h>

#include "rcp/cliffords.hpp"
#include "rcp/geometry.hpp"
#include "rcp/optimizer.hpp"
#include "rcp/presets.hpp"
#include "rcp/rb.hpp"
#include "rcp/sim.hpp"

using namespace rcp;

static void BM_PropagateSu2(benchmark::State& state) {
  XYPulse p = presets::x_pi_detuning();
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Mat2 u = pulse_unitary(p, steps);
    benchmark::DoNotOptimize(u);
  }
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_PropagateSu2)->Arg(300)->Arg(2000)->Arg(4000);

static void BM_DesignCost(benchmark::State& state) {
  XYPulse p = presets::x_pi_detuning();
  ParamVec x = p.x.a;
  x.insert(x.end(), p.x.phi.begin(), p.x.phi.end());
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) {
    double c = design_cost(x, 2, 50.0, steps);
    benchmark::DoNotOptimize(c);
  }
  state.SetItemsProcessed(state.iterations() * steps);
}
BENCHMARK(BM_DesignCost)->Arg(1000)->Arg(4000);

static void BM_ErrorCurve(benchmark::State& state) {
  XYPulse p = presets::x_pi_detuning();
  auto traj = propagate_trajectory(
      [&](double t) { return Mat(0.5 * p.omega_x(t) * pauli_x()); }, p.T(),
      2000);
  NoiseSource src = static_detuning();
  for (auto _ : state) {
    ErrorCurve c = error_curve(traj, p.T(), src);
    benchmark::DoNotOptimize(c.r.back());
  }
}
BENCHMARK(BM_ErrorCurve);

static void BM_RbSurvival(benchmark::State& state) {
  GateSet gs = build_gate_set(GateSetKind::gaussian, 0.0);
  const int m = static_cast<int>(state.range(0));
  auto seq = rb_sequence(7, m, 0);
  for (auto _ : state) {
    double f = rb_survival(gs, seq, 20e3, 25e3);
    benchmark::DoNotOptimize(f);
  }
  state.SetItemsProcessed(state.iterations() * m);
}
BENCHMARK(BM_RbSurvival)->Arg(100)->Arg(1000);

BENCHMARK_MAIN();
