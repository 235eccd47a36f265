#pragma once

// Pulse file serialization. JSON fields: name, kind ("x" or "xy"), T_ns,
// a, phi (flat arrays for "x"; pairs of arrays [x, y] for "xy"),
// carrier_phase, drag_coeff, anharmonicity_MHz. Harmonic count is free.

#include <filesystem>
#include <string>

#include "rcp/pulse.hpp"

namespace rcp {

std::string pulse_to_json(const XYPulse& p);
XYPulse pulse_from_json(const std::string& text);

void save_pulse(const XYPulse& p, const std::filesystem::path& path);
XYPulse load_pulse(const std::filesystem::path& path);

}  // namespace rcp
