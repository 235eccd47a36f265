#include <doctest.h>

#include <cmath>
#include <vector>

#include "rcp/fidelity.hpp"
#include "rcp/presets.hpp"
#include "rcp/rng.hpp"
#include "rcp/sim.hpp"
#include "rcp/tomo.hpp"
#include "rcp/units.hpp"

using namespace rcp;

namespace {

Mat random_isometry_4x2(Rng& rng) {
  Mat g(4, 2);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  return q.leftCols(2);
}

std::vector<Mat> random_tp_kraus(Rng& rng) {
  Mat v = random_isometry_4x2(rng);
  return {v.topRows(2), v.bottomRows(2)};
}

Mat apply_chi(const Mat& chi, const Mat& rho) {
  Mat out = Mat::Zero(2, 2);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n)
      out += chi(m, n) * pauli(m) * rho * pauli(n);
  return out;
}

Mat random_density(Rng& rng) {
  Mat g(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  Mat rho = g * g.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST_CASE("input states are informationally complete pure states") {
  auto states = qpt_input_states();
  REQUIRE(states.size() == 4);
  for (const Mat& rho : states) {
    CHECK(std::abs(rho.trace() - 1.0) < 1e-14);
    CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((rho * rho - rho).cwiseAbs().maxCoeff() < 1e-13);  // pure
  }
  // |0>, |0>-i|1>, |0>+|1>, |1> in order.
  CHECK(std::real(states[0](0, 0)) == doctest::Approx(1.0));
  CHECK(std::real(states[3](1, 1)) == doctest::Approx(1.0));
  CHECK(std::real(states[2](0, 1)) == doctest::Approx(0.5));
}

TEST_CASE("state reconstruction from measurement probabilities") {
  Rng rng(21, "tomo", 0);
  for (int k = 0; k < 20; ++k) {
    Mat rho = random_density(rng);
    Mat rec = qpt_reconstruct_state(qpt_probabilities(rho));
    CHECK((rec - rho).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("chi of the identity channel") {
  double cond = 0.0;
  Mat chi = qpt_chi(channel_of_unitary(Mat2::Identity()), &cond);
  Mat expect = Mat::Zero(4, 4);
  expect(0, 0) = 1.0;
  CHECK((chi - expect).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(cond > 0.0);
  CHECK(cond < 1e3);
}

TEST_CASE("chi closed form for unitaries matches tomography") {
  Rng rng(22, "tomo", 0);
  for (int k = 0; k < 10; ++k) {
    Vec3 axis(rng.normal(), rng.normal(), rng.normal());
    axis.normalize();
    double theta = rng.uniform(0.0, kPi);
    Mat2 s = axis(0) * pauli_x() + axis(1) * pauli_y() + axis(2) * pauli_z();
    Mat2 u = std::cos(theta / 2.0) * Mat2::Identity() - kI * std::sin(theta / 2.0) * s;
    Mat chi_t = qpt_chi(channel_of_unitary(u));
    Mat chi_c = chi_of_unitary(u);
    CHECK((chi_t - chi_c).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(qpt_fidelity(chi_t, chi_c) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("tomography reconstructs arbitrary trace-preserving channels") {
  Rng rng(23, "tomo", 0);
  for (int k = 0; k < 50; ++k) {
    auto kraus = random_tp_kraus(rng);
    Mat sum = Mat::Zero(2, 2);
    for (const Mat& kk : kraus) sum += kk.adjoint() * kk;
    REQUIRE((sum - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

    Channel ch = [&](const Mat& rho) { return apply_kraus(kraus, rho); };
    Mat chi = qpt_chi(ch);
    for (int t = 0; t < 3; ++t) {
      Mat rho = random_density(rng);
      CHECK((apply_chi(chi, rho) - ch(rho)).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("orthogonal processes have zero overlap fidelity") {
  Mat chi_x = chi_of_unitary(pauli_x());
  Mat chi_i = chi_of_unitary(Mat2::Identity());
  CHECK(qpt_fidelity(chi_x, chi_i) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(qpt_fidelity(chi_x, chi_x) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("gaussian gate fidelity valley versus detuning") {
  ReferencePulse g = presets::gaussian_x(kPi);
  Mat chi_target = chi_of_unitary(pauli_x());
  auto fid_at = [&](double delta_mhz) {
    Mat2 u = reference_unitary(g, static_detuning(), mhz_to_radns(delta_mhz), 1000);
    return qpt_fidelity(qpt_chi(channel_of_unitary(u)), chi_target);
  };
  double f0 = fid_at(0.0), f1 = fid_at(1.0), f2 = fid_at(2.0);
  CHECK(f0 > 1.0 - 1e-9);
  CHECK(f1 < f0 - 1e-4);
  CHECK(f2 < f1 - 1e-4);
}
