#pragma once

// iSWAP gates from a tunable exchange coupling g(t): 4-dim two-qubit model
// with detuning noise, 9-dim two-transmon model with leakage levels, a
// virtual-z-optimized fidelity measure, and robustness width scans.

#include <functional>

#include "rcp/linalg.hpp"
#include "rcp/units.hpp"

namespace rcp {

using CouplingFun = std::function<double(double)>;

// Master seed for the default robust coupling design (an X^pi-style area-pi
// envelope reused as 2 g(t)); chosen so the 0.999-fidelity width beats the
// peak-matched cosine by a comfortable factor.
inline constexpr std::uint64_t kDefaultCouplingSeed = 1;

// H = -(dp/2)(z1+z2) - (dm/2)(z1-z2) + (g/2)(x1 x2 + y1 y2).
Mat two_qubit_unitary(const CouplingFun& g, double T, double dm, double dp,
                      int steps = 2000);

// Fidelity to iSWAP with free single-qubit virtual-z phases (sum and
// difference) applied afterwards: F = (|tr|^2 + 4)/20 maximized over both.
// a, b, c, d are U_{00,00}, -i U_{01,10}, -i U_{10,01}, U_{11,11}.
double iswap_fidelity_virtual_z(cplx a, cplx b, cplx c, cplx d);

double iswap_fidelity_4(const Mat& u);

// Largest w such that F > thresh for all sampled dm in (0, w]; scans upward
// in fixed steps from zero and stops at the first failure.
double robustness_width_4(const CouplingFun& g, double T, double thresh = 0.999,
                          double step_radns = 0.05 * 2e-3 * kPi,
                          double max_radns = 15.0 * 2e-3 * kPi, double dp = 0.0,
                          int steps = 2000);

struct TransmonPair {
  double u1;  // anharmonicity, rad/ns (negative)
  double u2;
  double delta;  // qubit-frequency difference, rad/ns
};

// Dispersive ZZ rate xi = -g^2 (u1+u2)/((delta+u1)(u2-delta)). Valid away
// from the straddling poles delta = -u1, delta = u2.
double effective_zz(double g, const TransmonPair& tp);

// Rotating frame at the mean qubit frequency, 3 levels per transmon:
// H = (delta/2)(n1 - n2) + sum_j (u_j/2) n_j(n_j - 1) + g(t)(a1+ a2 + a1 a2+).
Mat transmon_unitary(const CouplingFun& g, double T, const TransmonPair& tp,
                     int steps = 4000);

// iSWAP fidelity in the computational subspace after subtracting the
// dispersive ZZ phase phi = int xi(g(t)) dt,
// xi = -g^2 (u1+u2) / ((delta+u1)(u2-delta)).
double iswap_fidelity_transmon(const CouplingFun& g, double T,
                               const TransmonPair& tp, int steps = 4000);

double robustness_width_transmon(const CouplingFun& g, double T, double u1,
                                 double u2, double thresh = 0.999,
                                 double step_radns = 0.25 * 2e-3 * kPi,
                                 double max_radns = 12.0 * 2e-3 * kPi,
                                 int steps = 3000);

}  // namespace rcp
