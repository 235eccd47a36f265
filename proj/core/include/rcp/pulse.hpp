#pragma once

// Sine-modulated Fourier ansatz, reference Gaussian/cosine envelopes,
// DRAG quadrature and the t -> alpha*t, Omega -> Omega/alpha rescaling rule.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcp/units.hpp"

namespace rcp {

// Omega(t) = sin(pi t/T) * (a0 + sum_n a_n cos(2 pi n t/T + phi_n)), Eq. typed
// with a in rad/ns. phi[n-1] belongs to a[n].
struct FourierPulse {
  double T = 0.0;
  std::vector<double> a;    // a0..aN
  std::vector<double> phi;  // phi1..phiN

  bool empty() const { return a.empty(); }

  double operator()(double t) const {
    if (t < -1e-12 || t > T + 1e-12)
      throw std::domain_error("fourier_envelope: t outside [0, T]");
    double s = a.empty() ? 0.0 : a[0];
    for (std::size_t n = 1; n < a.size(); ++n)
      s += a[n] * std::cos(kTwoPi * static_cast<double>(n) * t / T + phi[n - 1]);
    return std::sin(kPi * t / T) * s;
  }

  // Analytic d Omega / dt.
  double derivative(double t) const {
    if (a.empty()) return 0.0;
    double s = a[0], ds = 0.0;
    for (std::size_t n = 1; n < a.size(); ++n) {
      double w = kTwoPi * static_cast<double>(n) / T;
      s += a[n] * std::cos(w * t + phi[n - 1]);
      ds += -a[n] * w * std::sin(w * t + phi[n - 1]);
    }
    double p = kPi / T;
    return p * std::cos(p * t) * s + std::sin(p * t) * ds;
  }

  // Closed form: int_0^T sin(pi t/T) cos(2 pi n t/T + phi) dt
  //            = (2T/pi) cos(phi) / (1 - 4 n^2).
  double area() const {
    if (a.empty()) return 0.0;
    double s = a[0];
    for (std::size_t n = 1; n < a.size(); ++n)
      s += a[n] * std::cos(phi[n - 1]) / (1.0 - 4.0 * static_cast<double>(n * n));
    return 2.0 * T / kPi * s;
  }

  FourierPulse rescaled(double alpha) const {
    if (alpha <= 0.0) throw std::invalid_argument("rescale: alpha must be > 0");
    FourierPulse out = *this;
    out.T = alpha * T;
    for (double& an : out.a) an /= alpha;
    return out;
  }
};

struct XYPulse {
  std::string name = "pulse";
  FourierPulse x;
  FourierPulse y;  // empty => no second quadrature
  double carrier_phase = 0.0;
  double drag_coeff = 0.0;
  double anharmonicity = 0.0;  // rad/ns, needed only when drag_coeff != 0

  double T() const { return x.T; }

  double omega_x(double t) const { return x(t); }

  double omega_y(double t) const {
    double v = y.empty() ? 0.0 : y(t);
    if (drag_coeff != 0.0) {
      if (anharmonicity == 0.0)
        throw std::invalid_argument("drag_quadrature: zero anharmonicity");
      v += -drag_coeff * x.derivative(t) / anharmonicity;
    }
    return v;
  }

  bool has_y() const { return !y.empty() || drag_coeff != 0.0; }

  XYPulse rescaled(double alpha) const {
    XYPulse out = *this;
    out.x = x.rescaled(alpha);
    if (!y.empty()) out.y = y.rescaled(alpha);
    return out;
  }

  double peak(int samples = 4001) const {
    double pk = 0.0;
    for (int i = 0; i <= samples; ++i) {
      double t = T() * i / samples;
      double ox = omega_x(t), oy = has_y() ? omega_y(t) : 0.0;
      pk = std::max(pk, std::hypot(ox, oy));
    }
    return pk;
  }
};

// Reference envelopes, always x-only. Both vanish at t = 0, T and peak at T/2.
struct ReferencePulse {
  enum class Shape { gaussian, cosine };
  Shape shape = Shape::gaussian;
  double T = 0.0;
  double amp = 0.0;  // rad/ns prefactor, set by calibration

  double operator()(double t) const {
    if (shape == Shape::cosine)
      return amp * 0.5 * (1.0 - std::cos(kTwoPi * t / T));
    double sigma = T / 6.0;
    double g = std::exp(-0.5 * std::pow((t - T / 2.0) / sigma, 2));
    double g0 = std::exp(-0.5 * std::pow((T / 2.0) / sigma, 2));
    return amp * (g - g0) / (1.0 - g0);
  }

  double area() const {
    // Gaussian: amp * (sqrt(2 pi) sigma erf(T/(2 sqrt2 sigma)) - T g0) / (1 - g0).
    if (shape == Shape::cosine) return amp * T / 2.0;
    double sigma = T / 6.0;
    double g0 = std::exp(-0.5 * std::pow((T / 2.0) / sigma, 2));
    double raw = std::sqrt(kTwoPi) * sigma * std::erf(T / (2.0 * std::sqrt(2.0) * sigma));
    return amp * (raw - T * g0) / (1.0 - g0);
  }

  // Peak-amplitude-matched pulse realizing rotation angle theta: area = theta
  // at peak omega_max, solving for T.
  static ReferencePulse amplitude_matched(Shape shape, double theta, double omega_max) {
    ReferencePulse p;
    p.shape = shape;
    p.amp = omega_max;
    if (shape == Shape::cosine) {
      p.T = 2.0 * theta / omega_max;
      return p;
    }
    // area is linear in T for fixed sigma/T ratio: area = c * amp * T.
    p.T = 1.0;
    double c = p.area() / p.amp;
    p.T = theta / (omega_max * c);
    return p;
  }

  // Fixed duration, amplitude calibrated so area = theta.
  static ReferencePulse area_calibrated(Shape shape, double theta, double T) {
    ReferencePulse p;
    p.shape = shape;
    p.T = T;
    p.amp = 1.0;
    p.amp = theta / p.area();
    return p;
  }
};

}  // namespace rcp
