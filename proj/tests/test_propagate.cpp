#include <doctest.h>

#include <array>
#include <cmath>

#include "rcp/linalg.hpp"
#include "rcp/propagate.hpp"
#include "rcp/units.hpp"

using namespace rcp;

namespace {

double mat_dist(const Mat& a, const Mat& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("free z evolution matches the closed form") {
  const double w = 0.31, T = 12.0;
  Mat h = 0.5 * w * pauli_z();
  Mat u = propagate_final([&](double) { return h; }, T, 500);
  Mat2 expect;
  expect << std::exp(-kI * w * T / 2.0), 0.0, 0.0, std::exp(kI * w * T / 2.0);
  CHECK(mat_dist(u, expect) < 1e-12);
}

TEST_CASE("constant x drive of area pi gives -i sigma_x") {
  const double T = 50.0, om = kPi / T;
  Mat u = propagate_final([&](double) { return Mat(0.5 * om * pauli_x()); }, T, 400);
  Mat expect = -kI * Mat(pauli_x());
  CHECK(mat_dist(u, expect) < 1e-12);

  Mat2 usu2 = propagate_final_su2(
      [&](double) { return std::array<double, 3>{om, 0.0, 0.0}; }, T, 400);
  CHECK(mat_dist(usu2, expect) < 1e-12);
}

TEST_CASE("su2 fast path agrees with the generic integrator") {
  auto bloch = [](double t) {
    return std::array<double, 3>{0.2 * std::sin(0.3 * t), 0.05 * std::cos(0.11 * t),
                                 0.03 + 0.01 * t / 50.0};
  };
  auto hfun = [&](double t) {
    auto [hx, hy, hz] = bloch(t);
    return Mat(0.5 * (hx * pauli_x() + hy * pauli_y() + hz * pauli_z()));
  };
  Mat a = propagate_final(hfun, 50.0, 2000);
  Mat2 b = propagate_final_su2(bloch, 50.0, 2000);
  CHECK(mat_dist(a, b) < 1e-11);
}

TEST_CASE("midpoint rule converges at second order") {
  auto bloch = [](double t) {
    return std::array<double, 3>{0.25 * std::sin(kPi * t / 50.0), 0.0,
                                 0.04 * std::cos(0.2 * t)};
  };
  Mat2 u1 = propagate_final_su2(bloch, 50.0, 500);
  Mat2 u2 = propagate_final_su2(bloch, 50.0, 1000);
  Mat2 u4 = propagate_final_su2(bloch, 50.0, 2000);
  double d12 = mat_dist(u1, u2), d24 = mat_dist(u2, u4);
  CHECK(d12 < 1e-5);
  CHECK(d24 < d12 / 3.0);
  CHECK(d24 < 2e-6);
}

TEST_CASE("trajectory starts at identity and ends at the final unitary") {
  auto hfun = [](double t) {
    return Mat(0.5 * (0.1 * std::sin(0.4 * t) * pauli_x() + 0.02 * pauli_z()));
  };
  auto traj = propagate_trajectory(hfun, 20.0, 200);
  REQUIRE(traj.size() == 201);
  CHECK(mat_dist(traj.front(), Mat::Identity(2, 2)) == 0.0);
  Mat fin = propagate_final(hfun, 20.0, 200);
  CHECK(mat_dist(traj.back(), fin) < 1e-13);
  // Every sample is unitary.
  for (std::size_t i = 0; i < traj.size(); i += 37)
    CHECK(mat_dist(traj[i].adjoint() * traj[i], Mat::Identity(2, 2)) < 1e-12);
}

TEST_CASE("propagation input validation") {
  auto good = [](double) { return Mat(pauli_z()); };
  CHECK_THROWS_AS(propagate_final(good, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(propagate_final(good, -1.0, 10), std::invalid_argument);
  auto bad = [](double) {
    Mat m(2, 2);
    m << 0.0, 1.0, 0.0, 0.0;
    return m;
  };
  CHECK_THROWS_AS(propagate_final(bad, 1.0, 10), std::invalid_argument);
}

TEST_CASE("higher-dimensional Hermitian exponential is unitary and correct") {
  // 3-level ladder with detuning, compare one step against the eigensolver
  // applied twice with half steps (group property).
  Mat h = Mat::Zero(3, 3);
  h(0, 1) = h(1, 0) = 0.1;
  h(1, 2) = h(2, 1) = 0.1 * std::sqrt(2.0);
  h(1, 1) = 0.05;
  h(2, 2) = -0.4;
  Mat full = expm_herm(h, 0.8);
  Mat half = expm_herm(h, 0.4);
  CHECK(mat_dist(full, half * half) < 1e-12);
  CHECK(mat_dist(full * full.adjoint(), Mat::Identity(3, 3)) < 1e-12);
}
