#pragma once

// Noise sources V(t) = (eps/2) v(t) . sigma, described by the per-unit-eps
// Pauli coefficient vector v(t). Static detuning has v = (0,0,1); amplitude
// noise scales with the instantaneous drive.

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "rcp/linalg.hpp"
#include "rcp/pulse.hpp"

namespace rcp {

struct NoiseSource {
  std::string label;
  std::function<Vec3(double)> v;  // coefficient of sigma_k/2 per unit eps

  Vec3 operator()(double t) const { return v(t); }
};

// H += (delta/2) sigma_z with delta = eps.
inline NoiseSource static_detuning() {
  return {"z", [](double) { return Vec3(0.0, 0.0, 1.0); }};
}

// Multiplicative drive error: H += (eps/2)(Omega_x sigma_x + Omega_y sigma_y).
inline NoiseSource amplitude_noise(const XYPulse& p) {
  return {"amp", [p](double t) {
            return Vec3(p.omega_x(t), p.has_y() ? p.omega_y(t) : 0.0, 0.0);
          }};
}

inline NoiseSource axis_noise(int axis) {
  Vec3 e = Vec3::Zero();
  e(axis) = 1.0;
  std::string labels[3] = {"x", "y", "z"};
  return {labels[axis], [e](double) { return e; }};
}

// Quasi-static noise along all three directions, one source per axis.
inline std::vector<NoiseSource> three_axis_noise() {
  return {axis_noise(2), axis_noise(0), axis_noise(1)};
}

// Always-on ZZ coupling (xi/2) sigma_z sigma_z reduced over a fixed spectator
// state: sigma_z^(2) -> +1 (|0>) or -1 (|1>), i.e. a static detuning whose
// sign is set by the spectator. eps carries xi.
inline NoiseSource zz_coupling(int spectator) {
  double sign = spectator == 0 ? 1.0 : -1.0;
  return {spectator == 0 ? "zz0" : "zz1",
          [sign](double) { return Vec3(0.0, 0.0, sign); }};
}

// Control Hamiltonian plus one noise source at strength eps, 2-level frame.
inline auto noisy_bloch(XYPulse p, NoiseSource src, double eps) {
  return [p = std::move(p), src = std::move(src), eps](double t) {
    Vec3 n = src(t);
    return std::array<double, 3>{p.omega_x(t) + eps * n(0),
                                 (p.has_y() ? p.omega_y(t) : 0.0) + eps * n(1),
                                 eps * n(2)};
  };
}

inline auto reference_bloch(ReferencePulse p, NoiseSource src, double eps) {
  return [p, src = std::move(src), eps](double t) {
    Vec3 n = src(t);
    return std::array<double, 3>{p(t) + eps * n(0), eps * n(1), eps * n(2)};
  };
}

}  // namespace rcp
