#include "rcp/rb.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <stdexcept>

#include "rcp/fidelity.hpp"
#include "rcp/presets.hpp"
#include "rcp/propagate.hpp"
#include "rcp/rng.hpp"
#include "rcp/units.hpp"

namespace rcp {

namespace {

template <class EnvFun>
Mat2 phase_gate_unitary(EnvFun&& env, double T, double phase, double delta,
                        int steps) {
  const double cp = std::cos(phase), sp = std::sin(phase);
  return propagate_final_su2(
      [&](double t) {
        double om = env(t);
        return std::array<double, 3>{om * cp, om * sp, delta};
      },
      T, steps);
}

}  // namespace

GateSet build_gate_set(GateSetKind kind, double delta, int steps_per_gate) {
  GateSet out;
  const double omax = presets::kOmegaMax;

  if (kind == GateSetKind::gaussian) {
    ReferencePulse gpi = presets::gaussian_x(kPi);
    ReferencePulse gpi2 = presets::gaussian_x(kPi / 2.0);
    for (Gen g : {Gen::X, Gen::Y, Gen::Xh, Gen::Xhm, Gen::Yh, Gen::Yhm}) {
      auto spec = gen_pulse_spec(g);
      const ReferencePulse& p = spec.theta == kPi ? gpi : gpi2;
      out[g] = {phase_gate_unitary([&](double t) { return p(t); }, p.T,
                                   spec.phase, delta, steps_per_gate),
                p.T};
    }
    out[Gen::I] = {Mat2::Identity(), gpi2.T};
    return out;
  }

  XYPulse rpi = presets::x_pi_detuning();
  XYPulse rpi2 = presets::x_half_pi_detuning();
  // The pi/2 parameter set peaks above the amplitude cap; slow it down until
  // the peak matches (t -> alpha t, Omega -> Omega/alpha).
  const double alpha = rpi2.peak() / omax;
  XYPulse rpi2m = rpi2.rescaled(alpha);
  for (Gen g : {Gen::X, Gen::Y, Gen::Xh, Gen::Xhm, Gen::Yh, Gen::Yhm}) {
    auto spec = gen_pulse_spec(g);
    const XYPulse& p = spec.theta == kPi ? rpi : rpi2m;
    out[g] = {phase_gate_unitary([&](double t) { return p.omega_x(t); }, p.T(),
                                 spec.phase, delta, steps_per_gate),
              p.T()};
  }
  out[Gen::I] = {Mat2::Identity(), rpi2m.T()};
  return out;
}

std::vector<int> rb_sequence(std::uint64_t seed, int m, int seq_index) {
  Rng rng(seed, "rb",
          (static_cast<std::uint64_t>(m) << 32) |
              static_cast<std::uint64_t>(seq_index));
  std::vector<int> seq(m);
  for (int i = 0; i < m; ++i) seq[i] = static_cast<int>(rng.below(24));
  return seq;
}

namespace {

double survival_impl(const GateSet& gs, const std::vector<int>& cliffords,
                     const Gen* interleaved, double t1_ns, double t2_ns) {
  // Recovery Clifford from the ideal composite.
  const auto& cu = clifford_unitaries();
  Mat2 u = Mat2::Identity();
  for (int c : cliffords) {
    u = (cu[c] * u).eval();
    if (interleaved) u = (gen_unitary(*interleaved) * u).eval();
  }
  const int rec = clifford_inverses()[find_clifford(u)];

  // Per-generator Kraus sets, cached per call.
  std::map<Gen, std::vector<Mat>> kraus;
  for (const auto& [g, pg] : gs)
    kraus[g] = decoherence_kraus(pg.duration, t1_ns, t2_ns);

  Mat rho = Mat::Zero(2, 2);
  rho(0, 0) = 1.0;
  auto apply_gen = [&](Gen g) {
    const PhysicalGate& pg = gs.at(g);
    rho = pg.u * rho * pg.u.adjoint();
    rho = apply_kraus(kraus.at(g), rho);
  };
  auto apply_clifford = [&](int c) {
    for (Gen g : clifford_decompositions()[c]) apply_gen(g);
  };
  for (int c : cliffords) {
    apply_clifford(c);
    if (interleaved) apply_gen(*interleaved);
  }
  apply_clifford(rec);
  return std::real(rho(0, 0));
}

}  // namespace

double rb_survival(const GateSet& gs, const std::vector<int>& cliffords,
                   double t1_ns, double t2_ns) {
  return survival_impl(gs, cliffords, nullptr, t1_ns, t2_ns);
}

double rb_survival_interleaved(const GateSet& gs,
                               const std::vector<int>& cliffords, Gen target,
                               double t1_ns, double t2_ns) {
  return survival_impl(gs, cliffords, &target, t1_ns, t2_ns);
}

static std::vector<RBSample> run_impl(const GateSet& gs, const Gen* interleaved,
                                      const RBParams& params, int threads) {
  const double t1 = us_to_ns(params.t1_us), t2 = us_to_ns(params.t2_us);
  std::vector<RBSample> samples;
  samples.reserve(params.m_grid.size() * params.n_seq);
  for (int m : params.m_grid)
    for (int s = 0; s < params.n_seq; ++s) samples.push_back({m, s, 0.0});

  auto work = [&](std::size_t i) {
    auto seq = rb_sequence(params.seed, samples[i].m, samples[i].seq_index);
    samples[i].fidelity = survival_impl(gs, seq, interleaved, t1, t2);
  };

  if (threads <= 1) {
    for (std::size_t i = 0; i < samples.size(); ++i) work(i);
  } else {
    std::vector<std::future<void>> jobs;
    std::atomic<std::size_t> next{0};
    for (int t = 0; t < threads; ++t)
      jobs.push_back(std::async(std::launch::async, [&] {
        for (std::size_t i = next++; i < samples.size(); i = next++) work(i);
      }));
    for (auto& j : jobs) j.get();
  }
  return samples;
}

std::vector<RBSample> rb_run(const GateSet& gs, const RBParams& params,
                             int threads) {
  return run_impl(gs, nullptr, params, threads);
}

std::vector<RBSample> irb_run(const GateSet& gs, Gen target,
                              const RBParams& params, int threads) {
  return run_impl(gs, &target, params, threads);
}

RBFit rb_fit(const std::vector<RBSample>& samples, double divisor) {
  // Mean survival per m.
  std::map<int, std::pair<double, int>> acc;
  for (const auto& s : samples) {
    acc[s.m].first += s.fidelity;
    acc[s.m].second += 1;
  }
  std::vector<double> ms, fm;
  for (const auto& [m, v] : acc) {
    ms.push_back(static_cast<double>(m));
    fm.push_back(v.first / v.second);
  }
  const std::size_t n = ms.size();
  if (n < 2) throw std::invalid_argument("rb_fit: need at least two m values");

  RBFit best;
  double best_ssr = -1.0;
  bool best_feasible = false;
  {
    // p = 1 candidate (constant data); the design matrix is rank one there,
    // so take the minimal-norm split A = B = mean/2.
    double mean = 0;
    for (double f : fm) mean += f;
    mean /= static_cast<double>(n);
    double ssr = 0;
    for (double f : fm) ssr += (f - mean) * (f - mean);
    best = {0.5 * mean, 1.0, 0.5 * mean, 0.0};
    best_ssr = ssr;
    best_feasible = mean >= 0.0 && mean <= 2.0;
  }
  const int n_grid = 3000;
  for (int k = 0; k < n_grid; ++k) {
    double q = 1e-6 * std::pow(0.1 / 1e-6, static_cast<double>(k) / (n_grid - 1));
    double p = 1.0 - q;
    // Least squares for F = A p^m + B at fixed p.
    double sxx = 0, sx = 0, sy = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double x = std::pow(p, ms[i]);
      sxx += x * x;
      sx += x;
      sy += fm[i];
      sxy += x * fm[i];
    }
    double nn = static_cast<double>(n);
    double det = sxx * nn - sx * sx;
    if (std::abs(det) < 1e-300) continue;
    double a = (sxy * nn - sx * sy) / det;
    double b = (sxx * sy - sx * sxy) / det;
    bool feasible = a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0;
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double resid = a * std::pow(p, ms[i]) + b - fm[i];
      ssr += resid * resid;
    }
    // Prefer candidates with (A, B) inside bounds.
    bool take = best_ssr < 0 || (feasible && !best_feasible) ||
                (feasible == best_feasible && ssr < best_ssr);
    if (take) {
      best_ssr = ssr;
      best_feasible = feasible;
      best = {a, p, b, 0.0};
    }
  }
  best.f_avg = 1.0 - (1.0 - best.p) / divisor;
  return best;
}

double error_per_gate(double p, double divisor) {
  return (1.0 - p) / divisor;
}

std::map<int, double> rb_variance(const std::vector<RBSample>& samples) {
  std::map<int, std::vector<double>> by_m;
  for (const auto& s : samples) by_m[s.m].push_back(s.fidelity);
  std::map<int, double> out;
  for (const auto& [m, vals] : by_m) {
    double mean = 0;
    for (double v : vals) mean += v;
    mean /= vals.size();
    double var = 0;
    for (double v : vals) var += (v - mean) * (v - mean);
    out[m] = var / (vals.size() - 1);
  }
  return out;
}

double irb_gate_fidelity(double p_interleaved, double p_reference) {
  return 1.0 - (1.0 - p_interleaved / p_reference) / 2.0;
}

}  // namespace rcp
