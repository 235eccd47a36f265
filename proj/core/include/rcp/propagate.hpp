#pragma once

// Midpoint exponential integrator: U_{k+1} = exp(-i H(t_k + dt/2) dt) U_k.

#include <functional>
#include <stdexcept>
#include <vector>

#include "rcp/linalg.hpp"

namespace rcp {

inline constexpr int kDefaultSteps = 2000;  // per 50 ns gate

template <class HFun>
Mat propagate_final(HFun&& h, double T, int steps) {
  if (steps < 1) throw std::invalid_argument("propagate: steps < 1");
  if (T < 0.0) throw std::invalid_argument("propagate: negative duration");
  const double dt = T / steps;
  Mat h0 = h(0.5 * dt);
  if (!is_hermitian(h0)) throw std::invalid_argument("propagate: non-Hermitian Hamiltonian");
  Mat u = expm_herm(h0, dt);
  for (int k = 1; k < steps; ++k) {
    Mat hk = h((k + 0.5) * dt);
    if (!is_hermitian(hk)) throw std::invalid_argument("propagate: non-Hermitian Hamiltonian");
    u = (expm_herm(hk, dt) * u).eval();
  }
  return u;
}

// steps+1 samples at t_k = k dt, front() = identity.
template <class HFun>
std::vector<Mat> propagate_trajectory(HFun&& h, double T, int steps) {
  if (steps < 1) throw std::invalid_argument("propagate: steps < 1");
  const double dt = T / steps;
  std::vector<Mat> traj;
  traj.reserve(steps + 1);
  Mat h0 = h(0.5 * dt);
  if (!is_hermitian(h0)) throw std::invalid_argument("propagate: non-Hermitian Hamiltonian");
  const Eigen::Index d = h0.rows();
  traj.push_back(Mat::Identity(d, d));
  Mat u = Mat::Identity(d, d);
  for (int k = 0; k < steps; ++k) {
    Mat hk = h((k + 0.5) * dt);
    if (!is_hermitian(hk)) throw std::invalid_argument("propagate: non-Hermitian Hamiltonian");
    u = (expm_herm(hk, dt) * u).eval();
    traj.push_back(u);
  }
  return traj;
}

// Fast path used in the optimizer hot loop: 2x2, no Hermiticity re-checks,
// Hamiltonian given as Bloch components (hx, hy, hz) of H = h . sigma / 2.
template <class BlochFun>
Mat2 propagate_final_su2(BlochFun&& h, double T, int steps) {
  const double dt = T / steps;
  Mat2 u = Mat2::Identity();
  for (int k = 0; k < steps; ++k) {
    auto [hx, hy, hz] = h((k + 0.5) * dt);
    const double vx = 0.5 * hx, vy = 0.5 * hy, vz = 0.5 * hz;
    const double vn = std::sqrt(vx * vx + vy * vy + vz * vz);
    double c = std::cos(vn * dt), s = vn > 0.0 ? std::sin(vn * dt) / vn : 0.0;
    Mat2 step;
    step << cplx(c, -s * vz), cplx(-s * vy, -s * vx),
        cplx(s * vy, -s * vx), cplx(c, s * vz);
    u = (step * u).eval();
  }
  return u;
}

}  // namespace rcp
