// rcpctl: batch driver for the pulse toolkit. Every subcommand reads one
// JSON config, writes CSVs plus a run manifest into --out, and is
// deterministic for a fixed config and seed, independent of --threads.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rcp/cliffords.hpp"
#include "rcp/config.hpp"
#include "rcp/csvio.hpp"
#include "rcp/fidelity.hpp"
#include "rcp/geometry.hpp"
#include "rcp/optimizer.hpp"
#include "rcp/presets.hpp"
#include "rcp/pulseio.hpp"
#include "rcp/rb.hpp"
#include "rcp/sim.hpp"
#include "rcp/tomo.hpp"
#include "rcp/twoqubit.hpp"
#include "rcp/units.hpp"

namespace fs = std::filesystem;
using namespace rcp;

namespace {

const char* kUnitComment =
    "units: frequencies f = omega/(2 pi) in MHz, times in ns";

// ---- worker pool ------------------------------------------------------------

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < std::min(threads, n); ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// ---- output collection with rollback on failure -------------------------------

struct Emitter {
  fs::path dir;
  std::vector<fs::path> written;

  void csv(const std::string& name, const CsvWriter& w) {
    fs::create_directories(dir);
    fs::path p = dir / name;
    w.write(p);
    written.push_back(p);
    std::printf("wrote %s\n", p.string().c_str());
  }
  void pulse_file(const std::string& name, const XYPulse& p) {
    fs::create_directories(dir);
    save_pulse(p, dir / name);
    written.push_back(dir / name);
    std::printf("wrote %s\n", (dir / name).string().c_str());
  }
  void rollback() {
    for (const auto& p : written) {
      std::error_code ec;
      fs::remove(p, ec);
    }
  }
};

// ---- drive sources -------------------------------------------------------------

// A drive is either a Fourier x/x-y pulse or an analytic reference envelope.
struct Drive {
  std::string name;
  bool is_ref = false;
  XYPulse xy;
  ReferencePulse ref{ReferencePulse::Shape::gaussian, 1.0, 0.0};

  double T() const { return is_ref ? ref.T : xy.T(); }
  double ox(double t) const { return is_ref ? ref(t) : xy.omega_x(t); }
  double oy(double t) const {
    return (is_ref || !xy.has_y()) ? 0.0 : xy.omega_y(t);
  }
  bool has_y() const { return !is_ref && xy.has_y(); }
  double peak(int samples = 4001) const {
    if (!is_ref) return xy.peak(samples);
    double pk = 0.0;
    for (int i = 0; i < samples; ++i)
      pk = std::max(pk, std::abs(ref(ref.T * i / (samples - 1))));
    return pk;
  }
  Mat2 unitary(const NoiseSource& src, double eps, int steps) const {
    return is_ref ? reference_unitary(ref, src, eps, steps)
                  : noisy_pulse_unitary(xy, src, eps, steps);
  }
};

XYPulse preset_by_name(const std::string& name) {
  if (name == "x_pi_detuning") return presets::x_pi_detuning();
  if (name == "x_half_pi_detuning") return presets::x_half_pi_detuning();
  if (name == "x_pi_universal") return presets::x_pi_universal();
  if (name == "x_pi_universal_2") return presets::x_pi_universal_2();
  throw std::runtime_error(
      "config field 'pulse.preset': unknown preset '" + name +
      "' (expected x_pi_detuning, x_half_pi_detuning, x_pi_universal, "
      "x_pi_universal_2)");
}

Drive parse_drive_json(const nlohmann::json& j, const fs::path& base_dir) {
  Drive d;
  if (j.contains("preset")) {
    d.xy = preset_by_name(j.at("preset").get<std::string>());
    d.name = d.xy.name;
  } else if (j.contains("file")) {
    fs::path p = j.at("file").get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    d.xy = load_pulse(p);
    d.name = d.xy.name;
  } else if (j.contains("reference")) {
    std::string shape = j.at("reference").get<std::string>();
    double theta = j.value("theta_deg", 180.0) * kPi / 180.0;
    ReferencePulse::Shape s;
    if (shape == "gaussian")
      s = ReferencePulse::Shape::gaussian;
    else if (shape == "cosine")
      s = ReferencePulse::Shape::cosine;
    else
      throw std::runtime_error(
          "config field 'pulse.reference': expected gaussian or cosine");
    d.is_ref = true;
    d.ref = j.contains("T_ns")
                ? ReferencePulse::area_calibrated(s, theta,
                                                  j.at("T_ns").get<double>())
                : ReferencePulse::amplitude_matched(s, theta, presets::kOmegaMax);
    d.name = shape;
  } else {
    throw std::runtime_error(
        "config field 'pulse': need one of preset, file, reference");
  }
  if (j.contains("rescale_alpha")) {
    if (d.is_ref)
      throw std::runtime_error("pulse.rescale_alpha only applies to pulse files");
    d.xy = d.xy.rescaled(j.at("rescale_alpha").get<double>());
  }
  if (j.contains("label")) d.name = j.at("label").get<std::string>();
  return d;
}

Drive parse_drive(const ExperimentConfig& cfg, const std::string& key = "pulse") {
  fs::path base = cfg.path.empty() ? fs::path(".") : fs::path(cfg.path).parent_path();
  return parse_drive_json(cfg.at(key), base);
}

// ---- noise descriptors -----------------------------------------------------------

struct NoiseSpec {
  NoiseSource src;
  bool in_mhz = true;  // grid and CSV values in MHz; false = dimensionless
};

NoiseSpec parse_noise_json(const nlohmann::json& j, const Drive& d) {
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "detuning") return {static_detuning(), true};
  if (kind == "amplitude") {
    NoiseSource src{"amp", [d](double t) { return Vec3(d.ox(t), d.oy(t), 0.0); }};
    return {src, false};
  }
  if (kind == "axis") {
    std::string ax = j.at("axis").get<std::string>();
    int idx = ax == "x" ? 0 : ax == "y" ? 1 : ax == "z" ? 2 : -1;
    if (idx < 0)
      throw std::runtime_error("config field 'noise.axis': expected x, y or z");
    return {axis_noise(idx), true};
  }
  if (kind == "zz") {
    int sp = j.value("spectator", 0);
    if (sp != 0 && sp != 1)
      throw std::runtime_error("config field 'noise.spectator': expected 0 or 1");
    return {zz_coupling(sp), true};
  }
  throw std::runtime_error(
      "config field 'noise.kind': expected detuning, amplitude, axis or zz");
}

NoiseSpec parse_noise(const ExperimentConfig& cfg, const Drive& d,
                      const std::string& key = "noise") {
  return parse_noise_json(cfg.at(key), d);
}

// ---- grids -------------------------------------------------------------------------

struct Grid {
  std::vector<double> display;  // CSV values (MHz or dimensionless)
  std::vector<double> radns;    // simulation values
};

Grid parse_grid(const ExperimentConfig& cfg, const std::string& key, bool in_mhz) {
  std::string suffix = in_mhz ? "_mhz" : "";
  double lo = cfg.number(key + ".min" + suffix);
  double hi = cfg.number(key + ".max" + suffix);
  int n = static_cast<int>(cfg.integer_or(key + ".n", -1));
  if (n < 0) throw std::runtime_error("config field '" + key + ".n': required");
  bool log = cfg.has(key + ".log") && cfg.at(key + ".log").get<bool>();
  Grid g;
  g.display = log ? log_grid(lo, hi, n) : linear_grid(lo, hi, n);
  g.radns = g.display;
  if (in_mhz)
    for (double& v : g.radns) v = mhz_to_radns(v);
  return g;
}

std::string noise_column(const NoiseSpec& ns) {
  return ns.in_mhz ? "noise_value_MHz" : "noise_value";
}

// ---- shared pieces --------------------------------------------------------------

int steps_or(const ExperimentConfig& cfg, int fallback) {
  return static_cast<int>(cfg.integer_or("steps", fallback));
}

void add_provenance(CsvWriter& w, const ExperimentConfig& cfg) {
  w.comment(kUnitComment);
  w.comment("tool rcpctl " + std::string(kToolVersion));
  if (cfg.has("seed")) w.comment("seed " + std::to_string(cfg.seed()));
}

void expect_kind(const ExperimentConfig& cfg, const std::vector<std::string>& kinds) {
  for (const auto& k : kinds)
    if (cfg.kind() == k) return;
  std::string allowed;
  for (const auto& k : kinds) allowed += (allowed.empty() ? "" : ", ") + k;
  throw std::runtime_error("config kind '" + cfg.kind() +
                           "' does not match this subcommand (expected " +
                           allowed + ")");
}

// ---- subcommand bodies ------------------------------------------------------------

void cmd_design(const ExperimentConfig& cfg, Emitter& em, int threads) {
  DesignOptions opt;
  opt.n_harm = static_cast<int>(cfg.integer_or("n_harm", 2));
  opt.T = cfg.number_or("T_ns", 50.0);
  opt.restarts = static_cast<int>(cfg.integer_or("restarts", 8));
  opt.theta = cfg.number_or("theta_deg", 180.0) * kPi / 180.0;
  opt.steps_explore = static_cast<int>(cfg.integer_or("steps_explore", 1000));
  opt.steps_polish = static_cast<int>(cfg.integer_or("steps_polish", 4000));

  DesignResult dr = design_pulse(cfg.seed(), opt, threads);

  CsvWriter w({"restart", "cost"});
  add_provenance(w, cfg);
  w.comment("cost C = (1 - F) + ||r(T)|| / arc length, on the explore grid");
  for (std::size_t i = 0; i < dr.restart_costs.size(); ++i)
    w.row({static_cast<double>(i), dr.restart_costs[i]});
  em.csv("design_trace.csv", w);

  dr.pulse.name = cfg.str_or("name", "designed_x");
  em.pulse_file("pulse.json", dr.pulse);
  std::printf("best restart %d, final cost %.3g, %s\n", dr.best_restart, dr.cost,
              dr.converged ? "converged" : "NOT converged");
}

void cmd_curve(const ExperimentConfig& cfg, Emitter& em, int) {
  Drive d = parse_drive(cfg);
  NoiseSpec ns = parse_noise(cfg, d);
  int steps = steps_or(cfg, kDefaultSteps);

  auto traj = propagate_trajectory(
      [&](double t) {
        return Mat(0.5 * (d.ox(t) * pauli_x() + d.oy(t) * pauli_y()));
      },
      d.T(), steps);
  ErrorCurve c = error_curve(traj, d.T(), ns.src);
  FrenetFrame f = frenet_frame(c);

  CsvWriter w({"t_ns", "rx", "ry", "rz", "v", "kappa", "tau"});
  add_provenance(w, cfg);
  w.comment("pulse " + d.name + ", noise " + ns.src.label);
  w.comment("closure ||r(T)|| = " + CsvWriter::format(c.error_distance()) +
            ", arc length = " + CsvWriter::format(c.arc_length()));
  w.comment("kappa and tau are 0 where the frame is unresolved");
  for (std::size_t i = 0; i < c.t.size(); ++i)
    w.row({c.t[i], c.r[i](0), c.r[i](1), c.r[i](2), f.v[i],
           f.valid[i] ? f.kappa[i] : 0.0, f.valid[i] ? f.tau[i] : 0.0});
  em.csv("curve.csv", w);
}

void cmd_sweep(const ExperimentConfig& cfg, Emitter& em, int threads) {
  expect_kind(cfg, {"sweep1d", "sweep2d"});
  Drive d = parse_drive(cfg);
  int steps = steps_or(cfg, kDefaultSteps);

  if (cfg.kind() == "sweep1d") {
    NoiseSpec ns = parse_noise(cfg, d);
    Grid g = parse_grid(cfg, "grid", ns.in_mhz);
    Mat2 u0 = d.unitary(ns.src, 0.0, steps);
    std::vector<SweepRow> rows(g.radns.size());
    parallel_for(static_cast<int>(g.radns.size()), threads, [&](int i) {
      Mat2 ue = error_unitary(d.unitary(ns.src, g.radns[i], steps), u0);
      SweepRow& r = rows[i];
      r.eps = g.display[i];
      r.r_total = total_error_distance(ue);
      r.f_avg = avg_fidelity_from_distance(r.r_total);
      r.f_worst = worst_case_from_distance(r.r_total);
      auto b = diamond_bounds(1.0 - r.f_avg, 2);
      r.d_lower = b.lower;
      r.d_upper = b.upper;
    });
    CsvWriter w({noise_column(ns), "F_avg", "F_worst", "R", "D_lower", "D_upper"});
    add_provenance(w, cfg);
    w.comment("pulse " + d.name + ", noise " + ns.src.label +
              ", steps " + std::to_string(steps));
    for (const auto& r : rows)
      w.row({r.eps, r.f_avg, r.f_worst, r.r_total, r.d_lower, r.d_upper});
    em.csv("sweep.csv", w);
    return;
  }

  NoiseSpec na = parse_noise_json(cfg.at("noise_a"), d);
  NoiseSpec nb = parse_noise_json(cfg.at("noise_b"), d);
  Grid ga = parse_grid(cfg, "grid_a", na.in_mhz);
  Grid gb = parse_grid(cfg, "grid_b", nb.in_mhz);
  auto u_of = [&](double ea, double eb) {
    return propagate_final_su2(
        [&](double t) {
          Vec3 va = na.src(t), vb = nb.src(t);
          return std::array<double, 3>{d.ox(t) + ea * va(0) + eb * vb(0),
                                       d.oy(t) + ea * va(1) + eb * vb(1),
                                       ea * va(2) + eb * vb(2)};
        },
        d.T(), steps);
  };
  Mat2 u0 = u_of(0.0, 0.0);
  const int n_total = static_cast<int>(ga.radns.size() * gb.radns.size());
  std::vector<SweepRow> rows(n_total);
  std::vector<double> a_val(n_total), b_val(n_total);
  parallel_for(n_total, threads, [&](int idx) {
    int i = idx / static_cast<int>(gb.radns.size());
    int j = idx % static_cast<int>(gb.radns.size());
    Mat2 ue = error_unitary(u_of(ga.radns[i], gb.radns[j]), u0);
    SweepRow& r = rows[idx];
    a_val[idx] = ga.display[i];
    b_val[idx] = gb.display[j];
    r.r_total = total_error_distance(ue);
    r.f_avg = avg_fidelity_from_distance(r.r_total);
    r.f_worst = worst_case_from_distance(r.r_total);
    auto b = diamond_bounds(1.0 - r.f_avg, 2);
    r.d_lower = b.lower;
    r.d_upper = b.upper;
  });
  std::string col_a = na.in_mhz ? "noise_a_MHz" : "noise_a";
  std::string col_b = nb.in_mhz ? "noise_b_MHz" : "noise_b";
  CsvWriter w({col_a, col_b, "F_avg", "F_worst", "R", "D_lower", "D_upper"});
  add_provenance(w, cfg);
  w.comment("pulse " + d.name + ", noise_a " + na.src.label + ", noise_b " +
            nb.src.label + ", steps " + std::to_string(steps));
  for (int idx = 0; idx < n_total; ++idx) {
    const auto& r = rows[idx];
    w.row({a_val[idx], b_val[idx], r.f_avg, r.f_worst, r.r_total, r.d_lower,
           r.d_upper});
  }
  em.csv("sweep.csv", w);
}

void cmd_qpt(const ExperimentConfig& cfg, Emitter& em, int threads) {
  Drive d = parse_drive(cfg);
  NoiseSpec ns = parse_noise(cfg, d);
  Grid g = parse_grid(cfg, "grid", ns.in_mhz);
  int steps = steps_or(cfg, kDefaultSteps);

  Mat2 u0 = d.unitary(ns.src, 0.0, steps);
  Mat chi_target = chi_of_unitary(u0);
  std::vector<double> fid(g.radns.size()), cond(g.radns.size());
  parallel_for(static_cast<int>(g.radns.size()), threads, [&](int i) {
    Mat2 u = d.unitary(ns.src, g.radns[i], steps);
    double c = 0.0;
    Mat chi = qpt_chi(channel_of_unitary(u), &c);
    fid[i] = qpt_fidelity(chi, chi_target);
    cond[i] = c;
  });

  CsvWriter w({noise_column(ns), "F_qpt", "cond"});
  add_provenance(w, cfg);
  w.comment("pulse " + d.name + ", noise " + ns.src.label +
            "; F_qpt = tr(chi_exp chi_ideal), cond = basis condition number");
  for (std::size_t i = 0; i < g.display.size(); ++i)
    w.row({g.display[i], fid[i], cond[i]});
  em.csv("qpt.csv", w);
}

GateSetKind parse_gate_set(const ExperimentConfig& cfg) {
  std::string k = cfg.str("gate_set");
  if (k == "gaussian") return GateSetKind::gaussian;
  if (k == "rcp") return GateSetKind::rcp;
  throw std::runtime_error("config field 'gate_set': expected gaussian or rcp");
}

RBParams parse_rb_params(const ExperimentConfig& cfg) {
  RBParams p;
  for (const auto& v : cfg.at("m_grid")) p.m_grid.push_back(v.get<int>());
  p.n_seq = static_cast<int>(cfg.integer_or("n_seq", 20));
  p.t1_us = cfg.number_or("t1_us", 20.0);
  p.t2_us = cfg.number_or("t2_us", 25.0);
  p.seed = cfg.seed();
  return p;
}

CsvWriter rb_data_csv(const ExperimentConfig& cfg,
                      const std::vector<RBSample>& samples) {
  CsvWriter w({"m", "seq_index", "fidelity"});
  add_provenance(w, cfg);
  w.comment("fidelity = ground-state survival probability, infinite shots");
  for (const auto& s : samples)
    w.row({static_cast<double>(s.m), static_cast<double>(s.seq_index), s.fidelity});
  return w;
}

void cmd_rb(const ExperimentConfig& cfg, Emitter& em, int threads) {
  GateSet gs = build_gate_set(parse_gate_set(cfg),
                              mhz_to_radns(cfg.number_or("delta_mhz", 0.0)),
                              steps_or(cfg, 300));
  RBParams params = parse_rb_params(cfg);
  double divisor = cfg.number_or("divisor", kRBDivisor);

  auto samples = rb_run(gs, params, threads);
  RBFit fit = rb_fit(samples, divisor);

  em.csv("rb_data.csv", rb_data_csv(cfg, samples));

  CsvWriter wf({"A", "p", "B", "F_avg", "divisor"});
  add_provenance(wf, cfg);
  wf.comment("decay F = A p^m + B; error per gate = (1 - p)/divisor");
  wf.row({fit.a, fit.p, fit.b, fit.f_avg, divisor});
  em.csv("rb_fit.csv", wf);

  CsvWriter wv({"m", "sigma2"});
  add_provenance(wv, cfg);
  wv.comment("sample variance of survival across sequences at each depth");
  for (const auto& [m, v] : rb_variance(samples))
    wv.row({static_cast<double>(m), v});
  em.csv("rb_variance.csv", wv);

  std::printf("p = %.6f, error per gate = %.4f%%\n", fit.p,
              error_per_gate(fit.p, divisor) * 100.0);
}

Gen parse_gen(const std::string& name) {
  static const std::map<std::string, Gen> table = {
      {"I", Gen::I},     {"X", Gen::X},     {"Y", Gen::Y},
      {"X/2", Gen::Xh},  {"-X/2", Gen::Xhm}, {"Y/2", Gen::Yh},
      {"-Y/2", Gen::Yhm}};
  auto it = table.find(name);
  if (it == table.end())
    throw std::runtime_error("config field 'target': unknown generator '" +
                             name + "'");
  return it->second;
}

void cmd_irb(const ExperimentConfig& cfg, Emitter& em, int threads) {
  GateSet gs = build_gate_set(parse_gate_set(cfg),
                              mhz_to_radns(cfg.number_or("delta_mhz", 0.0)),
                              steps_or(cfg, 300));
  RBParams params = parse_rb_params(cfg);
  double divisor = cfg.number_or("divisor", kRBDivisor);
  Gen target = parse_gen(cfg.str("target"));

  auto ref = rb_run(gs, params, threads);
  auto inter = irb_run(gs, target, params, threads);
  RBFit fit_ref = rb_fit(ref, divisor);
  RBFit fit_int = rb_fit(inter, divisor);
  double f_gate = irb_gate_fidelity(fit_int.p, fit_ref.p);

  em.csv("irb_ref_data.csv", rb_data_csv(cfg, ref));
  em.csv("irb_int_data.csv", rb_data_csv(cfg, inter));

  CsvWriter w({"p_ref", "p_interleaved", "F_gate"});
  add_provenance(w, cfg);
  w.comment("target " + std::string(gen_name(target)) +
            "; F_gate = 1 - (1 - p_int/p_ref)/2");
  w.row({fit_ref.p, fit_int.p, f_gate});
  em.csv("irb.csv", w);
  std::printf("F_gate(%s) = %.6f\n", gen_name(target), f_gate);
}

void cmd_twoqubit(const ExperimentConfig& cfg, Emitter& em, int threads) {
  std::string model = cfg.str_or("model", "qubit4");
  if (model != "qubit4" && model != "transmon9")
    throw std::runtime_error("config field 'model': expected qubit4 or transmon9");

  Drive d = parse_drive(cfg);
  if (d.has_y())
    throw std::runtime_error("twoqubit: the coupling pulse must be x-only");
  auto g_rcp = [d](double t) { return 0.5 * d.ox(t); };
  const double g_pk = 0.5 * d.peak();
  const double t_cos = kPi / g_pk;
  auto g_cos = [g_pk, t_cos](double t) {
    return 0.5 * g_pk * (1.0 - std::cos(kTwoPi * t / t_cos));
  };

  Grid g = parse_grid(cfg, "grid", true);
  const double dp = mhz_to_radns(cfg.number_or("dp_mhz", 0.0));
  const double u1 = mhz_to_radns(cfg.number_or("u1_mhz", -236.0));
  const double u2 = mhz_to_radns(cfg.number_or("u2_mhz", -270.0));
  int steps = steps_or(cfg, model == "qubit4" ? 2000 : 4000);

  std::vector<double> f_r(g.radns.size()), f_c(g.radns.size());
  parallel_for(static_cast<int>(g.radns.size()), threads, [&](int i) {
    double dm = g.radns[i];
    if (model == "qubit4") {
      f_r[i] = iswap_fidelity_4(two_qubit_unitary(g_rcp, d.T(), dm, dp, steps));
      f_c[i] = iswap_fidelity_4(two_qubit_unitary(g_cos, t_cos, dm, dp, steps));
    } else {
      TransmonPair tp{u1, u2, dm};
      f_r[i] = iswap_fidelity_transmon(g_rcp, d.T(), tp, steps);
      f_c[i] = iswap_fidelity_transmon(g_cos, t_cos, tp, steps);
    }
  });

  CsvWriter w({"model", "noise_value_MHz", "fidelity_rcp", "fidelity_cosine"});
  add_provenance(w, cfg);
  w.comment("noise value is the qubit-frequency difference delta_minus/(2 pi)");
  w.comment("cosine comparator peak-matched at g_pk = " +
            CsvWriter::format(radns_to_mhz(g_pk)) + " MHz");
  for (std::size_t i = 0; i < g.display.size(); ++i)
    w.text_row({model, CsvWriter::format(g.display[i]), CsvWriter::format(f_r[i]),
           CsvWriter::format(f_c[i])});
  em.csv("twoqubit.csv", w);
}

void cmd_margin(const ExperimentConfig& cfg, Emitter& em, int threads) {
  const double f = cfg.number_or("f_threshold", 0.99);
  int steps = steps_or(cfg, kDefaultSteps);
  fs::path base = cfg.path.empty() ? fs::path(".") : fs::path(cfg.path).parent_path();

  std::vector<Drive> drives;
  for (const auto& spec : cfg.at("pulses"))
    drives.push_back(parse_drive_json(spec, base));

  std::vector<double> margins(drives.size());
  parallel_for(static_cast<int>(drives.size()), threads, [&](int i) {
    NoiseSpec ns = cfg.has("noise") ? parse_noise(cfg, drives[i])
                                    : NoiseSpec{static_detuning(), true};
    margins[i] = radns_to_mhz(noise_margin(
        [&](double e) { return drives[i].unitary(ns.src, e, steps); }, f));
  });

  CsvWriter w({"pulse", "margin_MHz"});
  add_provenance(w, cfg);
  w.comment("largest noise amplitude keeping worst-case fidelity >= " +
            CsvWriter::format(f));
  for (std::size_t i = 0; i < drives.size(); ++i)
    w.text_row({drives[i].name, CsvWriter::format(margins[i])});
  em.csv("margin.csv", w);
}

void cmd_fig3d(const ExperimentConfig& cfg, Emitter& em, int threads) {
  // Coherent-vs-decoherence map: robust 80 ns x-y pulse against a 34 ns
  // Gaussian, detuning eps = Delta/Omega_max on one axis, T1 = T2 on the other.
  XYPulse rcp = presets::x_pi_universal().rescaled(
      cfg.number_or("T_rcp_ns", 80.0) / 50.0);
  ReferencePulse gauss = ReferencePulse::area_calibrated(
      ReferencePulse::Shape::gaussian, kPi, cfg.number_or("T_gauss_ns", 34.0));
  int steps = steps_or(cfg, kDefaultSteps);

  Grid ge = parse_grid(cfg, "eps_grid", false);
  double lo = cfg.number("t1_grid.min_us");
  double hi = cfg.number("t1_grid.max_us");
  int nt = static_cast<int>(cfg.integer_or("t1_grid.n", -1));
  if (nt < 0) throw std::runtime_error("config field 't1_grid.n': required");
  bool lg = cfg.has("t1_grid.log") && cfg.at("t1_grid.log").get<bool>();
  std::vector<double> t1s = lg ? log_grid(lo, hi, nt) : linear_grid(lo, hi, nt);

  Mat2 target = pauli_x() * cplx(0.0, -1.0);
  auto fid = [&](const Mat2& u, double gate_ns, double t1_ns) {
    auto kraus = decoherence_kraus(gate_ns, t1_ns, t1_ns);
    std::vector<Mat> in_frame;
    in_frame.reserve(kraus.size());
    for (const auto& k : kraus) in_frame.push_back(target.adjoint() * k * u);
    return avg_fidelity_liouville(liouville_of_kraus(in_frame, 1), 2);
  };

  const int n_total = static_cast<int>(ge.radns.size()) * nt;
  std::vector<double> f_r(n_total), f_g(n_total);
  parallel_for(n_total, threads, [&](int idx) {
    int i = idx / nt, j = idx % nt;
    double delta = ge.display[i] * presets::kOmegaMax;
    double t1_ns = us_to_ns(t1s[j]);
    Mat2 ur = noisy_pulse_unitary(rcp, static_detuning(), delta, steps);
    Mat2 ug = reference_unitary(gauss, static_detuning(), delta, steps);
    f_r[idx] = fid(ur, rcp.T(), t1_ns);
    f_g[idx] = fid(ug, gauss.T, t1_ns);
  });

  CsvWriter w({"eps_ratio", "T1_us", "F_rcp", "F_gauss", "diff_abs", "diff_signed"});
  add_provenance(w, cfg);
  w.comment("eps_ratio = Delta/Omega_max (dimensionless), T2 = T1");
  w.comment("gate times: robust " + CsvWriter::format(rcp.T()) + " ns, gaussian " +
            CsvWriter::format(gauss.T) + " ns");
  for (int idx = 0; idx < n_total; ++idx) {
    int i = idx / nt, j = idx % nt;
    double diff = f_r[idx] - f_g[idx];
    w.row({ge.display[i], t1s[j], f_r[idx], f_g[idx], std::abs(diff), diff});
  }
  em.csv("fig3d.csv", w);
}

// ---- dispatch -----------------------------------------------------------------------

struct CommonArgs {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  int steps = 0;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonArgs& a) {
  cmd->add_option("--config", a.config, "experiment config (JSON)")->required();
  cmd->add_option("--out", a.out, "output directory")->required();
  auto* s = cmd->add_option("--seed", a.seed, "override the config seed");
  cmd->add_option("--steps", a.steps, "override integration steps");
  cmd->add_option("--threads", a.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  cmd->callback([&a, s] { a.seed_set = s->count() > 0; });
}

using Handler = void (*)(const ExperimentConfig&, Emitter&, int);

int run_command(const std::string& kind_label,
                const std::vector<std::string>& kinds, const CommonArgs& a,
                Handler handler) {
  ExperimentConfig cfg = ExperimentConfig::load(a.config);
  expect_kind(cfg, kinds);
  if (a.seed_set) cfg.j["seed"] = a.seed;
  if (a.steps > 0) cfg.j["steps"] = a.steps;
  if (a.seed_set || a.steps > 0) cfg.raw = cfg.j.dump(2) + "\n";

  Emitter em{fs::path(a.out), {}};
  try {
    handler(cfg, em, a.threads);
    fs::create_directories(em.dir);
    write_manifest(cfg, em.dir, kind_label);
  } catch (...) {
    em.rollback();
    throw;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pulse-level robust-control experiments"};
  app.require_subcommand(1);

  struct Sub {
    const char* name;
    const char* help;
    std::vector<std::string> kinds;
    Handler handler;
  };
  const std::vector<Sub> subs = {
      {"design", "derive a robust pulse by cost minimization", {"design"}, cmd_design},
      {"curve", "error-curve samples with Frenet data", {"curve"}, cmd_curve},
      {"sweep", "fidelity metrics over a noise grid", {"sweep1d", "sweep2d"}, cmd_sweep},
      {"qpt", "process-tomography fidelity over a noise grid", {"qpt"}, cmd_qpt},
      {"rb", "randomized benchmarking decay and fit", {"rb"}, cmd_rb},
      {"irb", "interleaved randomized benchmarking", {"irb"}, cmd_irb},
      {"twoqubit", "iSWAP fidelity vs frequency-difference noise", {"twoqubit"}, cmd_twoqubit},
      {"margin", "worst-case noise margins per pulse", {"margin"}, cmd_margin},
      {"fig3d", "robust-vs-gaussian fidelity difference map", {"fig3d"}, cmd_fig3d},
  };

  std::vector<CommonArgs> args(subs.size());
  std::vector<CLI::App*> cmds(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    cmds[i] = app.add_subcommand(subs[i].name, subs[i].help);
    add_common(cmds[i], args[i]);
  }

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!cmds[i]->parsed()) continue;
    try {
      return run_command(subs[i].name, subs[i].kinds, args[i], subs[i].handler);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error: %s\n", e.what());
      return 1;
    }
  }
  return 1;
}
