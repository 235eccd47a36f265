#include <doctest.h>

#include <cmath>
#include <set>

#include "rcp/cliffords.hpp"
#include "rcp/units.hpp"

using namespace rcp;

namespace {

bool equal_up_to_phase(const Mat2& a, const Mat2& b) {
  cplx ip = (a.adjoint() * b).trace();
  return std::abs(std::abs(ip) - 2.0) < 1e-9;
}

}  // namespace

TEST_CASE("generator pulse specs") {
  CHECK(gen_pulse_spec(Gen::X).theta == doctest::Approx(kPi));
  CHECK(gen_pulse_spec(Gen::X).phase == doctest::Approx(0.0));
  CHECK(gen_pulse_spec(Gen::Y).theta == doctest::Approx(kPi));
  CHECK(gen_pulse_spec(Gen::Y).phase == doctest::Approx(kPi / 2.0));
  CHECK(gen_pulse_spec(Gen::Xh).theta == doctest::Approx(kPi / 2.0));
  CHECK(gen_pulse_spec(Gen::Xhm).phase == doctest::Approx(kPi));
  CHECK(gen_pulse_spec(Gen::Yh).phase == doctest::Approx(kPi / 2.0));
  CHECK(gen_pulse_spec(Gen::Yhm).phase == doctest::Approx(3.0 * kPi / 2.0));
  CHECK_THROWS(gen_pulse_spec(Gen::I));
}

TEST_CASE("generator unitaries") {
  CHECK((gen_unitary(Gen::I) - Mat2::Identity()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK((gen_unitary(Gen::X) - Mat2(-kI * pauli_x())).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((gen_unitary(Gen::Y) - Mat2(-kI * pauli_y())).cwiseAbs().maxCoeff() < 1e-12);
  // X/2 then X/2 equals X up to phase; -X/2 undoes X/2.
  CHECK(equal_up_to_phase(gen_unitary(Gen::Xh) * gen_unitary(Gen::Xh),
                          gen_unitary(Gen::X)));
  CHECK(equal_up_to_phase(gen_unitary(Gen::Xhm) * gen_unitary(Gen::Xh),
                          Mat2::Identity()));
  CHECK(equal_up_to_phase(gen_unitary(Gen::Yhm) * gen_unitary(Gen::Yh),
                          Mat2::Identity()));
}

TEST_CASE("24 distinct cliffords, identity first") {
  const auto& cu = clifford_unitaries();
  REQUIRE(cu.size() == 24);
  CHECK(equal_up_to_phase(cu[0], Mat2::Identity()));
  for (std::size_t i = 0; i < 24; ++i)
    for (std::size_t j = i + 1; j < 24; ++j)
      CHECK_FALSE(equal_up_to_phase(cu[i], cu[j]));
}

TEST_CASE("identity clifford is one idle slot") {
  const auto& dec = clifford_decompositions();
  REQUIRE(dec.size() == 24);
  REQUIRE(dec[0].size() == 1);
  CHECK(dec[0][0] == Gen::I);
}

TEST_CASE("decompositions compose to their unitaries") {
  const auto& dec = clifford_decompositions();
  const auto& cu = clifford_unitaries();
  for (std::size_t c = 0; c < 24; ++c) {
    Mat2 u = Mat2::Identity();
    for (Gen g : dec[c]) u = (gen_unitary(g) * u).eval();
    CHECK(equal_up_to_phase(u, cu[c]));
  }
}

TEST_CASE("average physical-gate count per clifford") {
  const auto& dec = clifford_decompositions();
  std::size_t total = 0;
  for (const auto& d : dec) total += d.size();
  CHECK(total == 45);
  CHECK(avg_gates_per_clifford() == doctest::Approx(45.0 / 24.0));
}

TEST_CASE("group closure and lookup under global phase") {
  const auto& cu = clifford_unitaries();
  for (std::size_t i = 0; i < 24; ++i) {
    CHECK(find_clifford(cu[i]) == static_cast<int>(i));
    CHECK(find_clifford(Mat2(std::exp(kI * 0.7) * cu[i])) == static_cast<int>(i));
    for (std::size_t j = 0; j < 24; ++j) {
      int k = find_clifford(Mat2(cu[i] * cu[j]));
      CHECK(k >= 0);
    }
  }
}

TEST_CASE("inverse table closes every element") {
  const auto& cu = clifford_unitaries();
  const auto& inv = clifford_inverses();
  for (std::size_t i = 0; i < 24; ++i) {
    Mat2 prod = cu[inv[i]] * cu[i];
    CHECK(equal_up_to_phase(prod, Mat2::Identity()));
  }
}
