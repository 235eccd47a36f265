#include "rcp/cliffords.hpp"

#include <cmath>
#include <stdexcept>

#include "rcp/units.hpp"

namespace rcp {

GenPulseSpec gen_pulse_spec(Gen g) {
  switch (g) {
    case Gen::X: return {kPi, 0.0};
    case Gen::Y: return {kPi, kPi / 2.0};
    case Gen::Xh: return {kPi / 2.0, 0.0};
    case Gen::Xhm: return {kPi / 2.0, kPi};
    case Gen::Yh: return {kPi / 2.0, kPi / 2.0};
    case Gen::Yhm: return {kPi / 2.0, 3.0 * kPi / 2.0};
    case Gen::I: break;
  }
  throw std::invalid_argument("identity generator has no pulse");
}

Mat2 gen_unitary(Gen g) {
  if (g == Gen::I) return Mat2::Identity();
  auto [theta, phase] = gen_pulse_spec(g);
  Mat2 axis = std::cos(phase) * pauli_x() + std::sin(phase) * pauli_y();
  return std::cos(theta / 2.0) * Mat2::Identity() -
         kI * std::sin(theta / 2.0) * axis;
}

const std::vector<std::vector<Gen>>& clifford_decompositions() {
  using G = Gen;
  static const std::vector<std::vector<Gen>> table = {
      {G::I},
      {G::X},
      {G::Y},
      {G::Y, G::X},
      {G::Xh, G::Yh},
      {G::Xh, G::Yhm},
      {G::Xhm, G::Yh},
      {G::Xhm, G::Yhm},
      {G::Yh, G::Xh},
      {G::Yh, G::Xhm},
      {G::Yhm, G::Xh},
      {G::Yhm, G::Xhm},
      {G::Xh},
      {G::Xhm},
      {G::Yh},
      {G::Yhm},
      {G::Xhm, G::Yh, G::Xh},
      {G::Xhm, G::Yhm, G::Xh},
      {G::X, G::Yh},
      {G::X, G::Yhm},
      {G::Y, G::Xh},
      {G::Y, G::Xhm},
      {G::Xh, G::Yh, G::Xh},
      {G::Xhm, G::Yh, G::Xhm},
  };
  return table;
}

const std::vector<Mat2>& clifford_unitaries() {
  static const std::vector<Mat2> us = [] {
    std::vector<Mat2> out;
    for (const auto& decomp : clifford_decompositions()) {
      Mat2 u = Mat2::Identity();
      for (Gen g : decomp) u = (gen_unitary(g) * u).eval();
      out.push_back(u);
    }
    return out;
  }();
  return us;
}

namespace {

// Normalize the global phase: first element above threshold is made
// positive real.
Mat2 phase_canonical(const Mat2& u) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (std::abs(u(i, j)) > 1e-8) return u * (std::abs(u(i, j)) / u(i, j));
  return u;
}

}  // namespace

int find_clifford(const Mat2& u) {
  Mat2 up = phase_canonical(u);
  const auto& cs = clifford_unitaries();
  for (int i = 0; i < static_cast<int>(cs.size()); ++i) {
    if ((phase_canonical(cs[i]) - up).cwiseAbs().maxCoeff() < 1e-9) return i;
  }
  return -1;
}

const std::array<int, 24>& clifford_inverses() {
  static const std::array<int, 24> inv = [] {
    std::array<int, 24> out{};
    const auto& cs = clifford_unitaries();
    for (int i = 0; i < 24; ++i) {
      out[i] = -1;
      for (int j = 0; j < 24; ++j) {
        if (find_clifford(cs[j] * cs[i]) == 0) {
          out[i] = j;
          break;
        }
      }
    }
    return out;
  }();
  return inv;
}

double avg_gates_per_clifford() {
  std::size_t total = 0;
  for (const auto& d : clifford_decompositions()) total += d.size();
  return static_cast<double>(total) /
         static_cast<double>(clifford_decompositions().size());
}

}  // namespace rcp
