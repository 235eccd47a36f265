#include "rcp/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <future>
#include <utility>

#include "rcp/rng.hpp"
#include "rcp/units.hpp"

namespace rcp {

double design_cost(const ParamVec& x, int n_harm, double T, int steps,
                   double theta) {
  const double dt = T / steps;
  const double* a = x.data();
  const double* ph = x.data() + n_harm + 1;
  double run = 0.0;   // sum of midpoint envelope samples so far
  double ry = 0.0, rz = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double t = (k + 0.5) * dt;
    double s = a[0];
    for (int n = 1; n <= n_harm; ++n)
      s += a[n] * std::cos(kTwoPi * n * t / T + ph[n - 1]);
    const double om = std::sin(kPi * t / T) * s;
    const double th = (run + 0.5 * om) * dt;  // rotation angle at midpoint k
    ry += std::sin(th);
    rz += std::cos(th);
    run += om;
  }
  const double th_total = run * dt;
  const double delta = 0.5 * (th_total - theta);
  const double fid = (4.0 * std::pow(std::cos(delta), 2) + 2.0) / 6.0;
  const double closure = std::hypot(ry * dt, rz * dt) / T;
  return (1.0 - fid) + closure;
}

ParamVec design_gradient(const ParamVec& x, int n_harm, double T, int steps,
                         double theta, double fd) {
  ParamVec g(x.size());
  ParamVec xp = x;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + fd;
    double cp = design_cost(xp, n_harm, T, steps, theta);
    xp[i] = x[i] - fd;
    double cm = design_cost(xp, n_harm, T, steps, theta);
    xp[i] = x[i];
    g[i] = (cp - cm) / (2.0 * fd);
  }
  return g;
}

namespace {

double dot(const ParamVec& a, const ParamVec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const ParamVec& a) { return std::sqrt(dot(a, a)); }

}  // namespace

MinimizeResult bb_minimize(const ParamVec& x0, int n_harm, double T, int steps,
                           const BBOptions& opt, double theta) {
  MinimizeResult res;
  ParamVec x = x0;
  double c = design_cost(x, n_harm, T, steps, theta);
  ParamVec g = design_gradient(x, n_harm, T, steps, theta);
  long nev = 1 + 2 * static_cast<long>(x.size());

  std::deque<double> hist{c};
  ParamVec x_prev, g_prev;
  bool have_prev = false;
  double lr = 0.1 / std::max(norm(g), 1e-12);
  int fails = 0, it = 0;

  while (it < opt.max_iter) {
    ++it;
    if (c <= opt.tol) break;
    const double gn2 = dot(g, g);
    if (gn2 < 1e-30) break;

    if (have_prev) {
      ParamVec dx(x.size()), dg(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) {
        dx[i] = x[i] - x_prev[i];
        dg[i] = g[i] - g_prev[i];
      }
      const double denom = dot(dx, dg);
      if (denom > 1e-24) lr = dot(dx, dx) / denom;
      lr = std::clamp(lr, 1e-9, 1e3);
    }

    double cref = *std::max_element(hist.begin(), hist.end());
    double s = lr;
    bool accepted = false;
    ParamVec xn(x.size());
    double cn = 0.0;
    for (int bt = 0; bt < opt.max_backtrack; ++bt) {
      for (std::size_t i = 0; i < x.size(); ++i) xn[i] = x[i] - s * g[i];
      cn = design_cost(xn, n_harm, T, steps, theta);
      ++nev;
      if (cn < cref - opt.armijo * s * gn2) {
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) {
      if (++fails > opt.max_resets) break;
      have_prev = false;
      hist.assign({c});
      lr = 1e-3 / std::max(norm(g), 1e-12);
      continue;
    }
    x_prev = x;
    g_prev = g;
    have_prev = true;
    x = xn;
    c = cn;
    hist.push_back(c);
    while (static_cast<int>(hist.size()) > opt.nonmono_window) hist.pop_front();
    g = design_gradient(x, n_harm, T, steps, theta);
    nev += 2 * static_cast<long>(x.size());
  }
  res.x = std::move(x);
  res.cost = c;
  res.iters = it;
  res.evals = nev;
  return res;
}

ParamVec initial_params(std::uint64_t master_seed, int restart, int n_harm,
                        double T, double theta) {
  const double a0_scale = theta * kPi / (2.0 * T);
  Rng rng(master_seed, "design", static_cast<std::uint64_t>(restart));
  ParamVec x(2 * n_harm + 1, 0.0);
  for (int n = 1; n <= n_harm; ++n)
    x[n_harm + n] = rng.uniform(-kPi, kPi);  // phi_n
  double corr = 0.0;
  for (int n = 1; n <= n_harm; ++n) {
    x[n] = rng.uniform(-0.3, 0.3) * a0_scale;
    corr += x[n] * std::cos(x[n_harm + n]) / (1.0 - 4.0 * n * n);
  }
  x[0] = a0_scale - corr;  // start at pulse area = theta
  return x;
}

XYPulse pulse_from_params(const ParamVec& x, int n_harm, double T) {
  XYPulse p;
  p.name = "designed";
  p.x.T = T;
  p.x.a.assign(x.begin(), x.begin() + n_harm + 1);
  p.x.phi.assign(x.begin() + n_harm + 1, x.end());
  return p;
}

namespace {

struct RestartOutcome {
  ParamVec x;
  double cost = 0.0;
  long evals = 0;
};

RestartOutcome run_restart(std::uint64_t master_seed, int rs,
                           const DesignOptions& opt) {
  RestartOutcome out;
  ParamVec x0 = initial_params(master_seed, rs, opt.n_harm, opt.T, opt.theta);

  BBOptions explore;
  explore.tol = opt.tol_explore;
  explore.max_iter = 5000;
  MinimizeResult r1 =
      bb_minimize(x0, opt.n_harm, opt.T, opt.steps_explore, explore, opt.theta);
  out.evals += r1.evals;

  if (r1.cost < opt.polish_cut) {
    BBOptions polish;
    polish.tol = opt.tol_polish;
    polish.max_iter = 4000;
    MinimizeResult r2 =
        bb_minimize(r1.x, opt.n_harm, opt.T, opt.steps_polish, polish, opt.theta);
    out.evals += r2.evals;
    out.x = std::move(r2.x);
    out.cost = r2.cost;
  } else {
    out.x = std::move(r1.x);
    out.cost = design_cost(out.x, opt.n_harm, opt.T, opt.steps_polish, opt.theta);
    ++out.evals;
  }
  return out;
}

}  // namespace

DesignResult design_pulse(std::uint64_t master_seed, const DesignOptions& opt,
                          int threads) {
  std::vector<RestartOutcome> outcomes(opt.restarts);
  if (threads <= 1) {
    for (int rs = 0; rs < opt.restarts; ++rs)
      outcomes[rs] = run_restart(master_seed, rs, opt);
  } else {
    // Restarts are independent streams; result selection is by index, so the
    // outcome does not depend on scheduling.
    std::vector<std::future<RestartOutcome>> jobs;
    jobs.reserve(opt.restarts);
    for (int rs = 0; rs < opt.restarts; ++rs)
      jobs.push_back(std::async(std::launch::async, run_restart, master_seed,
                                rs, std::cref(opt)));
    for (int rs = 0; rs < opt.restarts; ++rs) outcomes[rs] = jobs[rs].get();
  }

  DesignResult best;
  bool have_best = false;
  for (int rs = 0; rs < opt.restarts; ++rs) {
    best.total_evals += outcomes[rs].evals;
    best.restart_costs.push_back(outcomes[rs].cost);
    if (!have_best || outcomes[rs].cost < best.cost) {
      best.cost = outcomes[rs].cost;
      best.x = outcomes[rs].x;
      best.best_restart = rs;
      have_best = true;
    }
  }
  best.pulse = pulse_from_params(best.x, opt.n_harm, opt.T);
  best.converged = best.cost < 1e-4;
  return best;
}

}  // namespace rcp
