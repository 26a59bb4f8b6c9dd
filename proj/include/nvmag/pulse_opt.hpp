#pragma once

#include <cstdint>

#include "nvmag/noise.hpp"
#include "nvmag/sequence.hpp"
#include "nvmag/su2.hpp"

namespace nvmag {

inline constexpr double default_gate_dt = 0.1;  // ns

enum class GateTarget { x, y };

struct GateSpec {
  GateTarget target = GateTarget::x;
  PulseKind kind = PulseKind::pm;
  PmParams pm;
  double rect_omega = pi / default_t_pulse;
  double t_pulse = default_t_pulse;
  double axis_phase = 0.0;  // pi/2 turns the X waveform into the Y gate drive

  static GateSpec rect_x(double t_pulse = default_t_pulse);
  static GateSpec pm_x(const PmParams& p);
};

Mat2 target_unitary(GateTarget t);  // exp(-i pi sigma_axis / 2)

// Pauli-transfer average gate fidelity, 1/2 + Tr(R_tar^T R_u)/6;
// global-phase invariant, floor 1/3
double gate_fidelity(const Mat2& u, const Mat2& target);

// propagate the drive at constant detuning and score against the target
double gate_under_detuning(const GateSpec& gate, double delta,
                           double dt = default_gate_dt);

// Gaussian-weighted mean fidelity over the m-point detuning grid on [-w, w]
double ensemble_objective(const GateSpec& gate, double w, double sigma,
                          int m = 15, double dt = default_gate_dt);

struct PmOptResult {
  PmParams params;
  double objective = 0.0;
  double seed_objective = 0.0;
  int restarts_run = 0;
  bool budget_exhausted_warning = false;
};

// Nelder-Mead over (a, b, nu) with the pulse duration tied to pi/nu and a
// quadratic penalty on the amplitude budget; restart 0 starts at the seed
PmOptResult optimize_pm(const PmParams& seed_params, double w, double sigma,
                        int m, int restarts, std::uint64_t seed,
                        double dt = default_gate_dt);

}  // namespace nvmag
