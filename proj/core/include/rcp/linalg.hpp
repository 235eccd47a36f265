#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace rcp {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Mat2 = Eigen::Matrix2cd;
using Vec = Eigen::VectorXcd;
using Vec3 = Eigen::Vector3d;

inline const cplx kI{0.0, 1.0};

inline Mat2 pauli_i() { return Mat2::Identity(); }
inline Mat2 pauli_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}
inline Mat2 pauli_y() {
  Mat2 m;
  m << 0, -kI, kI, 0;
  return m;
}
inline Mat2 pauli_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

inline Mat2 pauli(int k) {
  switch (k) {
    case 0: return pauli_i();
    case 1: return pauli_x();
    case 2: return pauli_y();
    case 3: return pauli_z();
  }
  throw std::out_of_range("pauli index");
}

inline bool is_hermitian(const Mat& m, double tol = 1e-9) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

// exp(-i * H * t) for Hermitian H. Closed form for 2x2, spectral otherwise.
inline Mat expm_herm(const Mat& h, double t) {
  const Eigen::Index d = h.rows();
  if (d == 2) {
    // H = c0 I + v . sigma; exp(-iHt) = e^{-i c0 t}(cos(|v|t) I - i sin(|v|t) v.sigma/|v|)
    double c0 = 0.5 * std::real(h(0, 0) + h(1, 1));
    double vx = std::real(h(0, 1));
    double vy = std::imag(h(1, 0));
    double vz = 0.5 * std::real(h(0, 0) - h(1, 1));
    double vn = std::sqrt(vx * vx + vy * vy + vz * vz);
    Mat2 u = Mat2::Identity() * std::cos(vn * t);
    if (vn > 0.0) {
      double s = std::sin(vn * t) / vn;
      Mat2 vs;
      vs << vz, cplx(vx, -vy), cplx(vx, vy), -vz;
      u -= kI * s * vs;
    }
    return std::exp(-kI * c0 * t) * u;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Vec phases(d);
  for (Eigen::Index k = 0; k < d; ++k)
    phases(k) = std::exp(-kI * es.eigenvalues()(k) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

// Pauli-vector extraction: m_k = Re(tr(sigma_k M)) / 2.
inline Vec3 half_trace_vector(const Mat2& m) {
  Vec3 v;
  v(0) = std::real(m(1, 0) + m(0, 1)) * 0.5;
  v(1) = std::real(kI * (m(0, 1) - m(1, 0))) * 0.5;
  v(2) = std::real(m(0, 0) - m(1, 1)) * 0.5;
  return v;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace rcp
