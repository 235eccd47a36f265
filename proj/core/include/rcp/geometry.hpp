#pragma once

// Error-curve geometry. For a noise source with coefficient vector v(t), the
// curve r(t) integrates v_k(t) * halfTraceVector(U0^dag sigma_k U0); its
// closure at t = T is the first-order robustness condition. The Frenet frame
// is built from the stored velocity samples, not by differentiating r.

#include <vector>

#include "rcp/linalg.hpp"
#include "rcp/noise.hpp"
#include "rcp/propagate.hpp"

namespace rcp {

struct ErrorCurve {
  std::vector<double> t;   // sample times, t[0] = 0
  std::vector<Vec3> r;     // curve samples (trapezoid cumulative)
  std::vector<Vec3> w;     // exact velocity samples dr/dt

  double error_distance() const { return r.back().norm(); }

  double arc_length() const {
    double s = 0.0;
    for (std::size_t i = 1; i < t.size(); ++i)
      s += 0.5 * (w[i - 1].norm() + w[i].norm()) * (t[i] - t[i - 1]);
    return s;
  }

  bool closes(double tol_times_arc) const {
    return error_distance() <= tol_times_arc * arc_length();
  }
};

// dr/dt at time t[i]: sum_k v_k(t_i) * halfTraceVector(U0_i^dag sigma_k U0_i).
inline Vec3 curve_velocity(const Mat2& u0, const Vec3& v) {
  Vec3 out = Vec3::Zero();
  for (int k = 0; k < 3; ++k) {
    if (v(k) == 0.0) continue;
    Mat2 m = u0.adjoint() * pauli(k + 1) * u0;
    out += v(k) * half_trace_vector(m);
  }
  return out;
}

inline ErrorCurve error_curve(const std::vector<Mat>& traj, double T,
                              const NoiseSource& src) {
  const std::size_t n = traj.size();
  ErrorCurve c;
  c.t.resize(n);
  c.r.resize(n);
  c.w.resize(n);
  const double dt = T / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    c.t[i] = dt * static_cast<double>(i);
    c.w[i] = curve_velocity(traj[i], src(c.t[i]));
  }
  c.r[0] = Vec3::Zero();
  for (std::size_t i = 1; i < n; ++i)
    c.r[i] = c.r[i - 1] + 0.5 * dt * (c.w[i - 1] + c.w[i]);
  return c;
}

// Frenet-Serret data along the curve. kappa is signed: the normal is kept
// continuous along the curve and the global orientation is fixed so that
// kappa > 0 at the sample of largest |kappa| (torsion is invariant under the
// simultaneous flip of kappa and N). Samples where the speed or curvature is
// too small to resolve the frame are masked out.
struct FrenetFrame {
  std::vector<double> t;
  std::vector<double> v;      // speed |w|
  std::vector<double> kappa;  // signed curvature
  std::vector<double> tau;    // torsion
  std::vector<char> valid;    // 1 where the frame is resolved and interior
};

namespace detail {

// 4th-order central first derivative on a uniform grid; one-sided 2nd-order
// at the two samples next to each edge and 1st-order at the edges.
inline std::vector<Vec3> d_dt(const std::vector<Vec3>& f, double dt) {
  const std::size_t n = f.size();
  std::vector<Vec3> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= 2 && i + 2 < n)
      d[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * dt);
    else if (i >= 1 && i + 1 < n)
      d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dt);
    else if (i == 0)
      d[i] = (f[1] - f[0]) / dt;
    else
      d[i] = (f[n - 1] - f[n - 2]) / dt;
  }
  return d;
}

}  // namespace detail

inline FrenetFrame frenet_frame(const ErrorCurve& c) {
  const std::size_t n = c.t.size();
  const double dt = c.t[1] - c.t[0];
  FrenetFrame f;
  f.t = c.t;
  f.v.assign(n, 0.0);
  f.kappa.assign(n, 0.0);
  f.tau.assign(n, 0.0);
  f.valid.assign(n, 0);

  double vmax = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    f.v[i] = c.w[i].norm();
    vmax = std::max(vmax, f.v[i]);
  }
  const double vfloor = 1e-6 * vmax;

  std::vector<Vec3> tangent(n, Vec3::Zero());
  for (std::size_t i = 0; i < n; ++i)
    if (f.v[i] > vfloor) tangent[i] = c.w[i] / f.v[i];

  std::vector<Vec3> tdot = detail::d_dt(tangent, dt);

  // The normal direction is unresolved where |T'| is small (inflections);
  // the finite-difference frame is noise-dominated there, so mask relative
  // to the largest |T'| on the curve.
  double tnmax = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (f.v[i] > vfloor) tnmax = std::max(tnmax, tdot[i].norm());
  const double tnfloor = std::max(1e-12, 1e-2 * tnmax);

  // Normal with sign continuity, then the signed curvature.
  std::vector<Vec3> normal(n, Vec3::Zero());
  Vec3 prev = Vec3::Zero();
  double kmax = 0.0;
  std::size_t imax = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (f.v[i] <= vfloor) continue;
    double tn = tdot[i].norm();
    if (tn <= tnfloor) continue;
    Vec3 nn = tdot[i] / tn;
    if (prev.norm() > 0.0 && nn.dot(prev) < 0.0) nn = -nn;
    normal[i] = nn;
    prev = nn;
    f.kappa[i] = tdot[i].dot(nn) / f.v[i];
    bool interior = i >= 2 && i + 2 < n;
    if (interior) {
      f.valid[i] = 1;
      if (std::abs(f.kappa[i]) > kmax) {
        kmax = std::abs(f.kappa[i]);
        imax = i;
      }
    }
  }

  // Canonical global orientation.
  if (kmax > 0.0 && f.kappa[imax] < 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      f.kappa[i] = -f.kappa[i];
      normal[i] = -normal[i];
    }
  }

  std::vector<Vec3> binormal(n, Vec3::Zero());
  for (std::size_t i = 0; i < n; ++i)
    if (f.valid[i]) binormal[i] = tangent[i].cross(normal[i]);
  std::vector<Vec3> bdot = detail::d_dt(binormal, dt);
  for (std::size_t i = 0; i < n; ++i) {
    if (!f.valid[i]) continue;
    // Keep only samples whose 5-point stencils see fully resolved frames.
    bool clean = i >= 4 && i + 4 < n;
    for (std::size_t j = i - 2; clean && j <= i + 2; ++j)
      if (normal[j].norm() == 0.0) clean = false;
    if (!clean) {
      f.valid[i] = 0;
      continue;
    }
    f.tau[i] = -bdot[i].dot(normal[i]) / f.v[i];
  }
  return f;
}

}  // namespace rcp
