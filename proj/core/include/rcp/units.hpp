#pragma once

// Internal unit system: time in ns, angular frequency in rad/ns.
// Config-facing frequencies are cyclic (MHz/GHz) and converted here.

#include <numbers>

namespace rcp {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// 1 MHz (cyclic) expressed as angular frequency in rad/ns.
inline constexpr double kMHz = kTwoPi * 1e-3;
// 1 GHz (cyclic) expressed as angular frequency in rad/ns.
inline constexpr double kGHz = kTwoPi;

constexpr double mhz_to_radns(double f_mhz) { return f_mhz * kMHz; }
constexpr double radns_to_mhz(double w) { return w / kMHz; }

constexpr double us_to_ns(double t_us) { return t_us * 1e3; }

}  // namespace rcp
