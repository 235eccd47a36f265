#pragma once

// Single-qubit Clifford group as products of the physical generator set
// {I, X, Y, +-X/2, +-Y/2}, with phase-insensitive lookup and inverses.

#include <array>
#include <string>
#include <vector>

#include "rcp/linalg.hpp"

namespace rcp {

enum class Gen { I, X, Y, Xh, Xhm, Yh, Yhm };

inline const char* gen_name(Gen g) {
  switch (g) {
    case Gen::I: return "I";
    case Gen::X: return "X";
    case Gen::Y: return "Y";
    case Gen::Xh: return "X/2";
    case Gen::Xhm: return "-X/2";
    case Gen::Yh: return "Y/2";
    case Gen::Yhm: return "-Y/2";
  }
  return "?";
}

// Rotation angle and drive phase (axis in the equatorial plane) realizing
// each non-identity generator as a resonant pulse.
struct GenPulseSpec {
  double theta;
  double phase;
};

GenPulseSpec gen_pulse_spec(Gen g);

Mat2 gen_unitary(Gen g);

// Decompositions of the 24 Cliffords over the generator set; element 0 is
// the identity Clifford (one idle "I" slot).
const std::vector<std::vector<Gen>>& clifford_decompositions();

const std::vector<Mat2>& clifford_unitaries();

// Index of the Clifford equal to u up to global phase, or -1.
int find_clifford(const Mat2& u);

// inverse_index[i] composed after i gives the identity Clifford.
const std::array<int, 24>& clifford_inverses();

// Mean number of physical gates per Clifford over the 24 decompositions.
double avg_gates_per_clifford();

}  // namespace rcp
