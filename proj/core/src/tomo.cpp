#include "rcp/tomo.hpp"

#include <array>
#include <cmath>

#include "rcp/units.hpp"

namespace rcp {

std::vector<Mat> qpt_input_states() {
  auto pure = [](cplx c0, cplx c1) {
    Vec psi(2);
    psi << c0, c1;
    return Mat(psi * psi.adjoint());
  };
  const double s = 1.0 / std::sqrt(2.0);
  return {pure(1, 0), pure(s, -s * kI), pure(s, s), pure(0, 1)};
}

namespace {

Mat2 rot_half_pi(const Mat2& axis) {
  return std::cos(kPi / 4.0) * Mat2::Identity() -
         kI * std::sin(kPi / 4.0) * axis;
}

}  // namespace

std::array<double, 3> qpt_probabilities(const Mat& rho_out) {
  std::array<double, 3> p{};
  const Mat2 rx = rot_half_pi(pauli_x());
  const Mat2 ry = rot_half_pi(pauli_y());
  p[0] = std::real(rho_out(0, 0));
  p[1] = std::real((rx * rho_out * rx.adjoint())(0, 0));
  p[2] = std::real((ry * rho_out * ry.adjoint())(0, 0));
  return p;
}

Mat qpt_reconstruct_state(const std::array<double, 3>& probs) {
  // p after X^{pi/2} reads <sigma_y>, after Y^{pi/2} reads -<sigma_x>.
  const double z = 2.0 * probs[0] - 1.0;
  const double y = 2.0 * probs[1] - 1.0;
  const double x = 1.0 - 2.0 * probs[2];
  return 0.5 * (Mat2::Identity() + x * pauli_x() + y * pauli_y() + z * pauli_z());
}

Mat qpt_chi(const Channel& channel, double* cond_out) {
  auto inputs = qpt_input_states();
  // Measured outputs via the rotation-and-measure protocol.
  std::vector<Mat> outputs;
  for (const Mat& rho : inputs)
    outputs.push_back(qpt_reconstruct_state(qpt_probabilities(channel(rho))));

  // Linear system A x = y over the 16 chi entries.
  Mat a = Mat::Zero(16, 16);
  Vec y(16);
  int row = 0;
  for (int i = 0; i < 4; ++i) {
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        for (int m = 0; m < 4; ++m)
          for (int n = 0; n < 4; ++n)
            a(row, 4 * m + n) = (pauli(m) * inputs[i] * pauli(n))(r, c);
        y(row) = outputs[i](r, c);
        ++row;
      }
    }
  }
  if (cond_out) {
    Eigen::JacobiSVD<Mat> svd(a);
    *cond_out = svd.singularValues()(0) / svd.singularValues()(15);
  }
  Vec x = a.colPivHouseholderQr().solve(y);
  Mat chi(4, 4);
  for (int m = 0; m < 4; ++m)
    for (int n = 0; n < 4; ++n) chi(m, n) = x(4 * m + n);
  return chi;
}

Mat chi_of_unitary(const Mat& u) {
  Vec c(4);
  for (int m = 0; m < 4; ++m) c(m) = (pauli(m) * u).trace() / 2.0;
  return Mat(c * c.adjoint());
}

double qpt_fidelity(const Mat& chi_e, const Mat& chi_t) {
  const double num = std::abs((chi_e * chi_t.adjoint()).trace());
  const double den = std::sqrt(std::real((chi_e * chi_e.adjoint()).trace()) *
                               std::real((chi_t * chi_t.adjoint()).trace()));
  return num / den;
}

}  // namespace rcp
