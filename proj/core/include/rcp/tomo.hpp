#pragma once

// Single-qubit quantum process tomography: informationally complete inputs,
// measurement in z after {I, X/2, Y/2} rotations, linear-inversion chi matrix
// in the Pauli basis, and the normalized chi-overlap fidelity.

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "rcp/linalg.hpp"

namespace rcp {

using Channel = std::function<Mat(const Mat&)>;

inline Channel channel_of_unitary(Mat u) {
  return [u = std::move(u)](const Mat& rho) { return Mat(u * rho * u.adjoint()); };
}

// {|0>, (|0> - i|1>)/sqrt2, (|0> + |1>)/sqrt2, |1>} as density matrices.
std::vector<Mat> qpt_input_states();

// Ground-state probabilities after each measurement rotation, one triple per
// input state: p[r] = <0| R_r rho R_r^dag |0>, R in {I, X^{pi/2}, Y^{pi/2}}.
std::array<double, 3> qpt_probabilities(const Mat& rho_out);

// State from measured probabilities (trace-preserving assumption).
Mat qpt_reconstruct_state(const std::array<double, 3>& probs);

// chi_{mn} with E(rho) = sum chi_{mn} P_m rho P_n, P in {I, X, Y, Z}.
// cond_out, when given, receives the inversion's condition number.
Mat qpt_chi(const Channel& channel, double* cond_out = nullptr);

Mat chi_of_unitary(const Mat& u);

// |tr(chi_e chi_t^dag)| / sqrt(tr(chi_e chi_e^dag) tr(chi_t chi_t^dag)).
double qpt_fidelity(const Mat& chi_e, const Mat& chi_t);

}  // namespace rcp
