#include "rcp/twoqubit.hpp"

#include <cmath>

#include "rcp/propagate.hpp"

namespace rcp {

Mat two_qubit_unitary(const CouplingFun& g, double T, double dm, double dp,
                      int steps) {
  Mat zi = kron(pauli_z(), pauli_i());
  Mat iz = kron(pauli_i(), pauli_z());
  Mat xx = kron(pauli_x(), pauli_x());
  Mat yy = kron(pauli_y(), pauli_y());
  Mat diag = -0.5 * dp * (zi + iz) - 0.5 * dm * (zi - iz);
  return propagate_final(
      [&](double t) { return Mat(diag + 0.5 * g(t) * (xx + yy)); }, T, steps);
}

double iswap_fidelity_virtual_z(cplx a, cplx b, cplx c, cplx d) {
  // a e^{-is} + d e^{is} sweeps an origin-centered ellipse with semi-axes
  // |a|+|d| and ||a|-|d|| tilted by (arg a + arg d)/2, and likewise for the
  // (b, c) pair, so max |tr| is the max over a single direction psi of the
  // sum of the two ellipse support functions. Both supports have period pi.
  auto support = [](cplx p, cplx q) {
    double ax = std::abs(p) + std::abs(q);
    double bx = std::abs(std::abs(p) - std::abs(q));
    double mu = (ax > 0.0) ? 0.5 * (std::arg(p) + std::arg(q)) : 0.0;
    return [ax, bx, mu](double psi) {
      double cs = std::cos(psi - mu), sn = std::sin(psi - mu);
      return std::sqrt(ax * ax * cs * cs + bx * bx * sn * sn);
    };
  };
  auto sa = support(a, d);
  auto sb = support(b, c);
  auto val = [&](double psi) { return sa(psi) + sb(psi); };

  const int n = 720;
  double best_m = -1.0, best_psi = 0.0;
  for (int i = 0; i < n; ++i) {
    double psi = kPi * i / n;
    double m = val(psi);
    if (m > best_m) {
      best_m = m;
      best_psi = psi;
    }
  }
  double lo = best_psi - kPi / n, hi = best_psi + kPi / n;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = val(x1), f2 = val(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = val(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = val(x1);
    }
  }
  double m = std::max(best_m, std::max(f1, f2));
  return (m * m + 4.0) / 20.0;
}

double iswap_fidelity_4(const Mat& u) {
  return iswap_fidelity_virtual_z(u(0, 0), -kI * u(1, 2), -kI * u(2, 1),
                                  u(3, 3));
}

double robustness_width_4(const CouplingFun& g, double T, double thresh,
                          double step_radns, double max_radns, double dp,
                          int steps) {
  double w = 0.0;
  for (double dm = step_radns; dm < max_radns; dm += step_radns) {
    Mat u = two_qubit_unitary(g, T, dm, dp, steps);
    if (iswap_fidelity_4(u) > thresh)
      w = dm;
    else
      break;
  }
  return w;
}

double effective_zz(double g, const TransmonPair& tp) {
  return -g * g * (tp.u1 + tp.u2) / ((tp.delta + tp.u1) * (tp.u2 - tp.delta));
}

Mat transmon_unitary(const CouplingFun& g, double T, const TransmonPair& tp,
                     int steps) {
  Mat a3 = Mat::Zero(3, 3);
  a3(0, 1) = 1.0;
  a3(1, 2) = std::sqrt(2.0);
  Mat id3 = Mat::Identity(3, 3);
  Mat a1 = kron(a3, id3), a2 = kron(id3, a3);
  Mat n1 = a1.adjoint() * a1, n2 = a2.adjoint() * a2;
  Mat coup = a1.adjoint() * a2 + a1 * a2.adjoint();
  Mat id9 = Mat::Identity(9, 9);
  Mat stat = 0.5 * tp.delta * (n1 - n2) + 0.5 * tp.u1 * (n1 * (n1 - id9)) +
             0.5 * tp.u2 * (n2 * (n2 - id9));
  return propagate_final([&](double t) { return Mat(stat + g(t) * coup); }, T,
                         steps);
}

double iswap_fidelity_transmon(const CouplingFun& g, double T,
                               const TransmonPair& tp, int steps) {
  Mat u = transmon_unitary(g, T, tp, steps);
  // Computational indices in the |n1 n2> basis: 00->0, 01->1, 10->3, 11->4.
  cplx a = u(0, 0), b = -kI * u(1, 3), c = -kI * u(3, 1), d = u(4, 4);
  // Dispersive ZZ phase accumulated by the always-on coupling.
  const double dt = T / steps;
  double phi = 0.0;
  for (int k = 0; k < steps; ++k)
    phi += effective_zz(g((k + 0.5) * dt), tp) * dt;
  a *= std::exp(kI * phi / 2.0);
  d *= std::exp(kI * phi / 2.0);
  b *= std::exp(-kI * phi / 2.0);
  c *= std::exp(-kI * phi / 2.0);
  return iswap_fidelity_virtual_z(a, b, c, d);
}

double robustness_width_transmon(const CouplingFun& g, double T, double u1,
                                 double u2, double thresh, double step_radns,
                                 double max_radns, int steps) {
  double w = 0.0;
  for (double delta = step_radns; delta < max_radns; delta += step_radns) {
    TransmonPair tp{u1, u2, delta};
    if (iswap_fidelity_transmon(g, T, tp, steps) > thresh)
      w = delta;
    else
      break;
  }
  return w;
}

}  // namespace rcp
