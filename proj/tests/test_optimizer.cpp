#include <doctest.h>

#include <cmath>

#include "rcp/optimizer.hpp"
#include "rcp/presets.hpp"
#include "rcp/units.hpp"

using namespace rcp;

namespace {

ParamVec params_of(const XYPulse& p) {
  ParamVec x(p.x.a.begin(), p.x.a.end());
  x.insert(x.end(), p.x.phi.begin(), p.x.phi.end());
  return x;
}

}  // namespace

TEST_CASE("cost of the published X^pi equals its closure defect") {
  ParamVec x = params_of(presets::x_pi_detuning());
  double c = design_cost(x, 2, 50.0, 4000);
  // Dominated by ||r(T)||/T of the z curve; the printed 5-decimal digits
  // leave a few-per-mille defect.
  CHECK(c > 3e-3);
  CHECK(c < 6e-3);
}

TEST_CASE("cost penalizes a wrong rotation angle") {
  // Half the published amplitudes rotate by pi/2 instead of pi.
  XYPulse p = presets::x_pi_detuning();
  for (double& an : p.x.a) an *= 0.5;
  double c = design_cost(params_of(p), 2, 50.0, 1000);
  double fid = (4.0 * std::pow(std::cos(0.5 * (kPi / 2.0 - kPi)), 2) + 2.0) / 6.0;
  CHECK(c > (1.0 - fid) * 0.9);
}

TEST_CASE("initial parameter draws start on the target area") {
  for (std::uint64_t seed : {0ULL, 3ULL, 42ULL})
    for (int rs : {0, 1, 5})
      for (double theta : {kPi, kPi / 2.0}) {
        ParamVec x = initial_params(seed, rs, 2, 50.0, theta);
        REQUIRE(x.size() == 5);
        XYPulse p = pulse_from_params(x, 2, 50.0);
        CHECK(p.x.area() == doctest::Approx(theta).epsilon(1e-12));
      }
}

TEST_CASE("initial parameter draws are reproducible and restart-dependent") {
  ParamVec a = initial_params(7, 2, 2, 50.0, kPi);
  ParamVec b = initial_params(7, 2, 2, 50.0, kPi);
  CHECK(a == b);
  ParamVec c = initial_params(7, 3, 2, 50.0, kPi);
  CHECK(a != c);
}

TEST_CASE("pulse_from_params lays out amplitudes then phases") {
  ParamVec x = {0.1, -0.2, 0.05, 0.3, -0.4};
  XYPulse p = pulse_from_params(x, 2, 50.0);
  CHECK(p.x.a == std::vector<double>{0.1, -0.2, 0.05});
  CHECK(p.x.phi == std::vector<double>{0.3, -0.4});
  CHECK(p.T() == 50.0);
  CHECK_FALSE(p.has_y());
}

TEST_CASE("bb polish drives the published pulse to a closed curve") {
  ParamVec x0 = params_of(presets::x_pi_detuning());
  BBOptions opt;
  opt.tol = 1e-8;
  opt.max_iter = 3000;
  MinimizeResult r = bb_minimize(x0, 2, 50.0, 4000, opt);
  CHECK(r.cost <= 1e-8);
  // The polished parameters stay within print-rounding distance.
  XYPulse p = pulse_from_params(r.x, 2, 50.0);
  CHECK(p.x.area() == doctest::Approx(kPi).epsilon(1e-3));
  for (std::size_t i = 0; i < x0.size(); ++i)
    CHECK(std::abs(r.x[i] - x0[i]) < 0.02);
}

TEST_CASE("design runs are deterministic and scheduling independent") {
  DesignOptions opt;
  opt.restarts = 2;
  opt.steps_explore = 300;
  opt.steps_polish = 600;
  opt.tol_explore = 1e-3;
  opt.tol_polish = 1e-8;
  opt.polish_cut = 1e-2;

  DesignResult r1 = design_pulse(5, opt, 1);
  DesignResult r2 = design_pulse(5, opt, 1);
  DesignResult r4 = design_pulse(5, opt, 2);
  CHECK(r1.cost == r2.cost);
  CHECK(r1.x == r2.x);
  CHECK(r1.best_restart == r2.best_restart);
  CHECK(r1.cost == r4.cost);
  CHECK(r1.x == r4.x);
  CHECK(r1.best_restart == r4.best_restart);

  REQUIRE(r1.restart_costs.size() == 2);
  CHECK(r1.cost == std::min(r1.restart_costs[0], r1.restart_costs[1]));
  CHECK(r1.pulse.T() == 50.0);
}
