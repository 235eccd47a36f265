#pragma once

// Randomized benchmarking on simulated gate sets: pulse-level physical
// generators with static detuning and per-gate decoherence, survival decay
// F(m) = A p^m + B, and interleaved-RB fidelity extraction.

#include <cstdint>
#include <map>
#include <vector>

#include "rcp/cliffords.hpp"
#include "rcp/linalg.hpp"

namespace rcp {

enum class GateSetKind { gaussian, rcp };

struct PhysicalGate {
  Mat2 u;          // unitary including detuning
  double duration; // ns, also applied to the idle slot
};

// One entry per generator. The identity is an idle of pi/2-gate duration:
// no drive, no detuning, decoherence only.
using GateSet = std::map<Gen, PhysicalGate>;

// Pulse-level construction at detuning delta (rad/ns). Gaussian gates are
// amplitude-matched at the 37.5 MHz cap; the robust set uses the published
// 50 ns X^pi and the X^{pi/2} slowed so its peak sits at the same cap.
GateSet build_gate_set(GateSetKind kind, double delta, int steps_per_gate = 300);

struct RBParams {
  std::vector<int> m_grid;
  int n_seq = 20;
  double t1_us = 20.0;
  double t2_us = 25.0;
  std::uint64_t seed = 0;
};

struct RBSample {
  int m = 0;
  int seq_index = 0;
  double fidelity = 0.0;  // ground-state survival probability
};

// Sequence draws depend only on (seed, m, seq_index), never on the gate set
// or detuning, so sweeps over delta are paired.
std::vector<int> rb_sequence(std::uint64_t seed, int m, int seq_index);

double rb_survival(const GateSet& gs, const std::vector<int>& cliffords,
                   double t1_ns, double t2_ns);

// Interleaved variant: the target generator follows every random Clifford
// and the recovery inverts the full ideal composite.
double rb_survival_interleaved(const GateSet& gs,
                               const std::vector<int>& cliffords, Gen target,
                               double t1_ns, double t2_ns);

std::vector<RBSample> rb_run(const GateSet& gs, const RBParams& params,
                             int threads = 1);

// Same sequence draws as rb_run, so reference and interleaved runs pair up.
std::vector<RBSample> irb_run(const GateSet& gs, Gen target,
                              const RBParams& params, int threads = 1);

// Published Clifford-compilation constant: F_avg = 1 - (1 - p)/3.75.
inline constexpr double kRBDivisor = 3.75;

struct RBFit {
  double a = 0.0;
  double p = 0.0;
  double b = 0.0;
  double f_avg = 0.0;
};

// F = A p^m + B by least squares: p profiled over a log grid of 1 - p with
// p in (0, 1]; (A, B) solved linearly per candidate and kept inside [0, 1].
RBFit rb_fit(const std::vector<RBSample>& samples, double divisor = kRBDivisor);

// Error per physical gate, (1 - p)/divisor.
double error_per_gate(double p, double divisor = kRBDivisor);

// Sample variance of the survival across sequences at each m.
std::map<int, double> rb_variance(const std::vector<RBSample>& samples);

// Interleaved RB: F_gate = 1 - (1 - p_interleaved/p_reference)/2.
double irb_gate_fidelity(double p_interleaved, double p_reference);

}  // namespace rcp
