#pragma once

// Published 50 ns pulse parameter sets (amplitudes rad/ns, phases rad) and
// the amplitude-matched reference pulses used alongside them.

#include "rcp/pulse.hpp"
#include "rcp/units.hpp"

namespace rcp::presets {

inline constexpr double kOmegaMax = 0.0375 * kTwoPi;  // 37.5 MHz drive cap

// X^pi robust to static detuning.
inline XYPulse x_pi_detuning() {
  XYPulse p;
  p.name = "x_pi_detuning";
  p.x = {50.0, {0.01034, -0.25855, -0.03278}, {-0.01523, -0.03790}};
  return p;
}

// X^{pi/2} robust to static detuning.
inline XYPulse x_half_pi_detuning() {
  XYPulse p;
  p.name = "x_half_pi_detuning";
  p.x = {50.0, {0.34930, 0.30764, 0.00026}, {-0.00305, -0.00609}};
  return p;
}

// X^pi robust to detuning and amplitude noise simultaneously (x-y drive).
inline XYPulse x_pi_universal() {
  XYPulse p;
  p.name = "x_pi_universal";
  p.x = {50.0, {-0.13158, -0.65450, -0.42338}, {0.00214, 0.00734}};
  p.y = {50.0, {-0.41686, -0.65453, -0.56110}, {-0.00144, -0.00528}};
  return p;
}

// Second X^pi robust to all three noise directions (N = 3 row).
inline XYPulse x_pi_universal_2() {
  XYPulse p;
  p.name = "x_pi_universal_2";
  p.x = {50.0,
         {0.00701, -0.23557, 0.03234, -0.24956},
         {0.00800, -0.60128, -0.02887}};
  p.y = {50.0,
         {-0.32726, -0.12747, 0.16732, 0.06606},
         {0.03469, -0.07938, -0.09605}};
  return p;
}

inline ReferencePulse gaussian_x(double theta) {
  return ReferencePulse::amplitude_matched(ReferencePulse::Shape::gaussian,
                                           theta, kOmegaMax);
}

inline ReferencePulse cosine_x(double theta) {
  return ReferencePulse::amplitude_matched(ReferencePulse::Shape::cosine,
                                           theta, kOmegaMax);
}

}  // namespace rcp::presets
