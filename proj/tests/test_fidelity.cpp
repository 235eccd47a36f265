#include <doctest.h>

#include <cmath>
#include <limits>

#include "rcp/fidelity.hpp"
#include "rcp/rng.hpp"
#include "rcp/units.hpp"

using namespace rcp;

namespace {

Mat2 rotation(double theta, const Vec3& axis) {
  Vec3 n = axis.normalized();
  Mat2 s = n(0) * pauli_x() + n(1) * pauli_y() + n(2) * pauli_z();
  return std::cos(theta / 2.0) * Mat2::Identity() -
         kI * std::sin(theta / 2.0) * s;
}

Mat2 random_rotation(Rng& rng, double max_angle) {
  Vec3 axis(rng.normal(), rng.normal(), rng.normal());
  double theta = rng.uniform(0.0, max_angle);
  return rotation(theta, axis);
}

Mat random_density(Rng& rng) {
  Mat g(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) g(i, j) = cplx(rng.normal(), rng.normal());
  Mat rho = g * g.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST_CASE("total error distance is the half rotation angle") {
  Rng rng(11, "fid", 0);
  for (int k = 0; k < 50; ++k) {
    Vec3 axis(rng.normal(), rng.normal(), rng.normal());
    double theta = rng.uniform(0.0, kPi);
    Mat2 u = rotation(theta, axis);
    CHECK(total_error_distance(u) == doctest::Approx(theta / 2.0).epsilon(1e-10));
    // Global phase cannot change it.
    cplx phase = std::exp(kI * rng.uniform(0.0, 2.0 * kPi));
    CHECK(total_error_distance(phase * u) ==
          doctest::Approx(theta / 2.0).epsilon(1e-10));
  }
  CHECK(total_error_distance(Mat2::Identity()) == 0.0);
  CHECK(total_error_distance(Mat2(pauli_x())) == doctest::Approx(kPi / 2.0));
}

TEST_CASE("average fidelity identities") {
  Rng rng(12, "fid", 0);
  for (int k = 0; k < 100; ++k) {
    Mat2 ue = random_rotation(rng, kPi);
    double r = total_error_distance(ue);
    // Trace formula against the distance formula.
    CHECK(unitary_gate_fidelity(ue, Mat2::Identity()) ==
          doctest::Approx(avg_fidelity_from_distance(r)).epsilon(1e-12));
    // Liouville-form average fidelity of the same channel.
    auto l = liouville_of_kraus({Mat(ue)}, 1);
    CHECK(avg_fidelity_liouville(l, 2) ==
          doctest::Approx(1.0 - (2.0 / 3.0) * std::sin(r) * std::sin(r))
              .epsilon(1e-12));
  }
}

TEST_CASE("liouville transfer matrix of a unitary is orthogonal") {
  Rng rng(13, "fid", 0);
  Mat2 u = random_rotation(rng, 2.0);
  auto l = liouville_of_kraus({Mat(u)}, 1);
  CHECK((l * l.transpose() - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-12);
  CHECK(l(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("worst case and diamond bounds") {
  CHECK(worst_case_from_distance(0.0) == 1.0);
  CHECK(worst_case_from_distance(kPi / 2.0) == doctest::Approx(0.0));
  auto b = diamond_bounds(0.01, 2);
  CHECK(b.lower == doctest::Approx(std::sqrt(1.5 * 0.01)));
  CHECK(b.upper == doctest::Approx(std::sqrt(6.0 * 0.01)));
  CHECK(b.lower <= b.upper);
  // The worst-case distance |sin R| sits exactly on the lower bound when the
  // infidelity comes from a unitary error.
  for (double r : {0.05, 0.2, 0.39}) {
    double infid = (2.0 / 3.0) * std::sin(r) * std::sin(r);
    auto bb = diamond_bounds(infid, 2);
    double dist = std::abs(std::sin(r));
    CHECK(dist >= bb.lower - 1e-12);
    CHECK(dist <= bb.upper);
  }
}

TEST_CASE("pauli basis is orthonormal") {
  for (int n : {1, 2}) {
    auto basis = pauli_basis(n);
    REQUIRE(basis.size() == std::size_t(1) << (2 * n));
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = 0; j < basis.size(); ++j) {
        cplx ip = (basis[i].adjoint() * basis[j]).trace();
        CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-13);
      }
  }
}

TEST_CASE("decoherence kraus set is trace preserving") {
  for (auto [tau, t1, t2] : {std::array<double, 3>{50.0, 20000.0, 25000.0},
                             std::array<double, 3>{300.0, 5000.0, 9000.0},
                             std::array<double, 3>{10.0, 1e7, 1e7}}) {
    auto ks = decoherence_kraus(tau, t1, t2);
    Mat sum = Mat::Zero(2, 2);
    for (const Mat& k : ks) sum += k.adjoint() * k;
    CHECK((sum - Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("decoherence limits") {
  const double inf = std::numeric_limits<double>::infinity();
  Rng rng(14, "fid", 0);
  Mat rho = random_density(rng);

  auto ident = decoherence_kraus(50.0, inf, inf);
  CHECK((apply_kraus(ident, rho) - rho).cwiseAbs().maxCoeff() < 1e-14);

  auto relax = decoherence_kraus(1e9, 100.0, 150.0);
  Mat out = apply_kraus(relax, rho);
  CHECK(std::real(out(0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(out(0, 1)) < 1e-12);

  CHECK_THROWS_AS(decoherence_kraus(1.0, 100.0, 201.0), std::invalid_argument);
}

TEST_CASE("decoherence decay rates") {
  // Dephasing uses the Lindblad-rate convention: sqrt(1/Tphi) sigma_z damps
  // coherences at 2/Tphi, on top of the 1/(2 T1) amplitude-damping part.
  const double t1 = 20000.0, t2 = 25000.0, tau = 137.0;
  const double inv_tphi = 1.0 / t2 - 0.5 / t1;
  Rng rng(15, "fid", 0);
  Mat rho = random_density(rng);
  Mat out = apply_kraus(decoherence_kraus(tau, t1, t2), rho);
  CHECK(std::real(out(1, 1)) ==
        doctest::Approx(std::exp(-tau / t1) * std::real(rho(1, 1))).epsilon(1e-12));
  double coh = std::exp(-0.5 * tau / t1 - 2.0 * tau * inv_tphi);
  CHECK(std::abs(out(0, 1)) ==
        doctest::Approx(coh * std::abs(rho(0, 1))).epsilon(1e-12));

  // Pure dephasing only.
  const double inf = std::numeric_limits<double>::infinity();
  Mat outp = apply_kraus(decoherence_kraus(tau, inf, 3000.0), rho);
  CHECK(std::real(outp(1, 1)) == doctest::Approx(std::real(rho(1, 1))).epsilon(1e-12));
  CHECK(std::abs(outp(0, 1)) ==
        doctest::Approx(std::exp(-2.0 * tau / 3000.0) * std::abs(rho(0, 1))).epsilon(1e-12));
}
