#pragma once

// Gate and channel fidelity measures, the total error distance of an error
// unitary, and the fidelity/diamond-distance relations used for reporting.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rcp/linalg.hpp"

namespace rcp {

// Average gate fidelity between unitaries, F = (|tr(V^dag U)|^2 + d)/(d(d+1)).
inline double unitary_gate_fidelity(const Mat& u, const Mat& v) {
  const double d = static_cast<double>(u.rows());
  const double tr = std::abs((v.adjoint() * u).trace());
  return (tr * tr + d) / (d * (d + 1.0));
}

// Half rotation angle of the SU(2) projection of a 2x2 unitary: the global
// phase is removed via det U = e^{2 i lambda}, leaving R in [0, pi/2].
inline double total_error_distance(const Mat2& ue) {
  cplx det = ue.determinant();
  double lambda = 0.5 * std::arg(det);
  double c = std::abs(std::real(ue.trace() * std::exp(-kI * lambda))) * 0.5;
  return std::acos(std::clamp(c, -1.0, 1.0));
}

// Error unitary of a noisy gate against its noise-free version.
inline Mat2 error_unitary(const Mat2& u_noisy, const Mat2& u0) {
  return u0.adjoint() * u_noisy;
}

// Eq. F = 1 - (2/3) sin^2 R for a single qubit.
inline double avg_fidelity_from_distance(double r) {
  double s = std::sin(r);
  return 1.0 - (2.0 / 3.0) * s * s;
}

// Worst-case fidelity estimate over pure states, F = 1 - |sin R|.
inline double worst_case_from_distance(double r) {
  return 1.0 - std::abs(std::sin(r));
}

// Diamond-distance bounds from the average infidelity r of a d-dim channel:
// sqrt((d+1)/d) sqrt(r) <= D <= sqrt((d+1)d) sqrt(r).
struct DiamondBounds {
  double lower = 0.0;
  double upper = 0.0;
};

inline DiamondBounds diamond_bounds(double avg_infidelity, int dim) {
  const double d = static_cast<double>(dim);
  const double s = std::sqrt(std::max(avg_infidelity, 0.0));
  return {std::sqrt((d + 1.0) / d) * s, std::sqrt((d + 1.0) * d) * s};
}

// ---- Liouville (Pauli transfer) representation ----------------------------

// Normalized Pauli basis for n qubits, identity first: P_i / sqrt(d).
inline std::vector<Mat> pauli_basis(int n_qubits) {
  std::vector<Mat> basis;
  basis.push_back(pauli_i());
  basis.push_back(pauli_x());
  basis.push_back(pauli_y());
  basis.push_back(pauli_z());
  for (int q = 1; q < n_qubits; ++q) {
    std::vector<Mat> next;
    next.reserve(basis.size() * 4);
    for (const Mat& left : basis)
      for (int k = 0; k < 4; ++k) next.push_back(kron(left, pauli(k)));
    basis.swap(next);
  }
  const double norm = std::sqrt(std::pow(2.0, n_qubits));
  for (Mat& b : basis) b /= norm;
  return basis;
}

// Transfer matrix L_ij = tr(B_i^dag E(B_j)) of the Kraus channel.
inline Eigen::MatrixXd liouville_of_kraus(const std::vector<Mat>& kraus, int n_qubits) {
  auto basis = pauli_basis(n_qubits);
  const int dd = static_cast<int>(basis.size());
  Eigen::MatrixXd l(dd, dd);
  for (int j = 0; j < dd; ++j) {
    Mat image = Mat::Zero(basis[j].rows(), basis[j].cols());
    for (const Mat& k : kraus) image += k * basis[j] * k.adjoint();
    for (int i = 0; i < dd; ++i)
      l(i, j) = std::real((basis[i].adjoint() * image).trace());
  }
  return l;
}

// Average fidelity of a channel (transfer matrix in the ideal gate's frame)
// F = (tr L + d L_00) / (d (d + 1)) with L_00 = 1 for trace-preserving maps.
inline double avg_fidelity_liouville(const Eigen::MatrixXd& l, int dim) {
  const double d = static_cast<double>(dim);
  return (l.trace() + d * l(0, 0)) / (d * (d + 1.0));
}

// ---- Decoherence channels --------------------------------------------------

// Amplitude damping (T1) composed with pure dephasing for duration tau.
// 1/Tphi = 1/T2 - 1/(2 T1); requires T2 <= 2 T1.
inline std::vector<Mat> decoherence_kraus(double tau, double t1, double t2) {
  if (t2 > 2.0 * t1 + 1e-12)
    throw std::invalid_argument("decoherence: T2 > 2 T1 unphysical");
  const double p = 1.0 - std::exp(-tau / t1);
  const double inv_tphi = 1.0 / t2 - 0.5 / t1;
  const double lam = 1.0 - std::exp(-2.0 * tau * inv_tphi);

  Mat2 ad0 = Mat2::Identity();
  ad0(1, 1) = std::sqrt(1.0 - p);
  Mat2 ad1 = Mat2::Zero();
  ad1(0, 1) = std::sqrt(p);
  Mat2 pd0 = std::sqrt(1.0 - 0.5 * lam) * Mat2::Identity();
  Mat2 pd1 = std::sqrt(0.5 * lam) * pauli_z();

  std::vector<Mat> out;
  for (const Mat2& d : {pd0, pd1})
    for (const Mat2& a : {ad0, ad1}) out.push_back(d * a);
  return out;
}

// rho -> sum_k K rho K^dag
inline Mat apply_kraus(const std::vector<Mat>& kraus, const Mat& rho) {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (const Mat& k : kraus) out += k * rho * k.adjoint();
  return out;
}

}  // namespace rcp
