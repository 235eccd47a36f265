#pragma once

// Single-qubit noisy-gate simulation helpers: final unitaries, error
// distances vs noise strength, fidelity sweeps, scaling-law slopes and
// worst-case noise margins.

#include <cmath>
#include <vector>

#include "rcp/fidelity.hpp"
#include "rcp/noise.hpp"
#include "rcp/propagate.hpp"
#include "rcp/pulse.hpp"

namespace rcp {

inline Mat2 pulse_unitary(const XYPulse& p, int steps) {
  bool has_y = p.has_y();
  return propagate_final_su2(
      [&](double t) {
        return std::array<double, 3>{p.omega_x(t), has_y ? p.omega_y(t) : 0.0, 0.0};
      },
      p.T(), steps);
}

inline Mat2 noisy_pulse_unitary(const XYPulse& p, const NoiseSource& src,
                                double eps, int steps) {
  bool has_y = p.has_y();
  return propagate_final_su2(
      [&](double t) {
        Vec3 n = src(t);
        return std::array<double, 3>{p.omega_x(t) + eps * n(0),
                                     (has_y ? p.omega_y(t) : 0.0) + eps * n(1),
                                     eps * n(2)};
      },
      p.T(), steps);
}

inline Mat2 reference_unitary(const ReferencePulse& p, const NoiseSource& src,
                              double eps, int steps) {
  return propagate_final_su2(
      [&](double t) {
        Vec3 n = src(t);
        return std::array<double, 3>{p(t) + eps * n(0), eps * n(1), eps * n(2)};
      },
      p.T, steps);
}

// Total error distance of the noisy gate relative to its noise-free self.
template <class UnitaryFun>
double error_distance_at(UnitaryFun&& u_of_eps, double eps) {
  Mat2 u0 = u_of_eps(0.0);
  Mat2 u = u_of_eps(eps);
  return total_error_distance(error_unitary(u, u0));
}

struct SweepRow {
  double eps = 0.0;  // rad/ns
  double f_avg = 0.0;
  double f_worst = 0.0;
  double r_total = 0.0;
  double d_lower = 0.0;
  double d_upper = 0.0;
};

template <class UnitaryFun>
std::vector<SweepRow> fidelity_sweep(UnitaryFun&& u_of_eps,
                                     const std::vector<double>& eps_grid) {
  Mat2 u0 = u_of_eps(0.0);
  std::vector<SweepRow> rows;
  rows.reserve(eps_grid.size());
  for (double e : eps_grid) {
    Mat2 ue = error_unitary(u_of_eps(e), u0);
    SweepRow row;
    row.eps = e;
    row.r_total = total_error_distance(ue);
    row.f_avg = avg_fidelity_from_distance(row.r_total);
    row.f_worst = worst_case_from_distance(row.r_total);
    auto b = diamond_bounds(1.0 - row.f_avg, 2);
    row.d_lower = b.lower;
    row.d_upper = b.upper;
    rows.push_back(row);
  }
  return rows;
}

// Least-squares slope of log(1 - F_avg) against log(eps).
template <class UnitaryFun>
double infidelity_slope(UnitaryFun&& u_of_eps, const std::vector<double>& eps_grid) {
  Mat2 u0 = u_of_eps(0.0);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  double n = 0;
  for (double e : eps_grid) {
    double r = total_error_distance(error_unitary(u_of_eps(e), u0));
    double infid = 1.0 - avg_fidelity_from_distance(r);
    if (infid <= 0.0) continue;
    double x = std::log(e), y = std::log(infid);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    n += 1.0;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo * std::pow(hi / lo, n == 1 ? 0.0 : static_cast<double>(i) / (n - 1));
  return g;
}

inline std::vector<double> linear_grid(double lo, double hi, int n) {
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = lo + (hi - lo) * (n == 1 ? 0.0 : static_cast<double>(i) / (n - 1));
  return g;
}

// Largest eps (rad/ns) with worst-case fidelity still >= f: bracket by
// doubling, then bisect. Assumes monotone crossing on the bracketed segment.
template <class UnitaryFun>
double noise_margin(UnitaryFun&& u_of_eps, double f, double eps_init = 1e-4,
                    int iters = 60) {
  Mat2 u0 = u_of_eps(0.0);
  auto worst = [&](double e) {
    return worst_case_from_distance(
        total_error_distance(error_unitary(u_of_eps(e), u0)));
  };
  double hi = eps_init;
  while (worst(hi) >= f) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < iters; ++i) {
    double mid = 0.5 * (lo + hi);
    (worst(mid) >= f ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace rcp
