#pragma once

#include <utility>
#include <vector>

#include "nvmag/constants.hpp"
#include "nvmag/su2.hpp"

namespace nvmag {

enum class PulseKind { rect, pm };

// single-term-per-entry phase-modulated drive; the realized Rabi vector is
// sum_j a_j * (cos phi_j(t), sin phi_j(t)) with phi_j = (b_j/nu_j) sin(nu_j t)
struct PmParams {
  std::vector<double> a{default_pulse_a};
  std::vector<double> b{default_pulse_b};
  std::vector<double> nu{default_pulse_nu};
  double amplitude_sum() const {
    double s = 0.0;
    for (double v : a) s += v;
    return s;
  }
  // half a modulation period, so the drive phase returns to zero
  double natural_duration() const { return pi / nu.front(); }
};

// drive Rabi vector (Omega_x, Omega_y) at time t into the pulse
std::pair<double, double> pm_waveform(const PmParams& p, double t);

struct Pulse {
  double start = 0.0;
  double duration = 0.0;
  double axis_phase = 0.0;  // 0 -> X, pi/2 -> Y
};

struct Sequence {
  PulseKind kind = PulseKind::rect;
  int n_blocks = 1;
  double t_pulse = default_t_pulse;
  double period = default_period;  // pulse center spacing
  double rect_omega = pi / default_t_pulse;
  PmParams pm;
  std::vector<Pulse> pulses;

  int n_pulses() const { return 8 * n_blocks; }
  double total_time() const { return static_cast<double>(n_pulses()) * period; }
  double ac_omega() const { return pi / period; }
};

// XY-8: pulse k centered at (k + 1/2) * period, axis pattern X Y X Y Y X Y X
Sequence build_xy8(int n_blocks, PulseKind kind, double period = default_period,
                   const PmParams& pm = PmParams{},
                   double t_pulse_rect = default_t_pulse);

// sign of sin(omega t + offset); the XY-8 filter uses offset = pi/2
double modulation_function(double t, double omega, double offset);

// noiseless XY-8 population, 0.5 [1 + cos(4 g t / pi)]
double ideal_population(double g_ac, double total_time);

// piecewise-constant drive with a continuous ac term on sigma_z;
// H = [delta/2 + g_ac cos(om_ac t + ac_phase)] sz + Omega_x/2 sx + Omega_y/2 sy
struct Segment {
  double length = 0.0;
  double delta = 0.0;
  double om_x = 0.0;
  double om_y = 0.0;
  double g_ac = 0.0;
  double om_ac = 0.0;
  double ac_phase = 0.0;
};

struct HamiltonianTrack {
  std::vector<Segment> segments;
  double total_time() const {
    double s = 0.0;
    for (const auto& seg : segments) s += seg.length;
    return s;
  }
};

// midpoint piecewise-constant matrix exponentials; each segment is split
// into ceil(length/dt) equal steps
Mat2 propagate(const HamiltonianTrack& track, double dt);

// dt-sliced drive samples for one pulse (used by the sequence integrator
// and by the gate-fidelity track builder)
struct PulseTable {
  double dt = 0.0;
  int steps = 0;
  std::vector<double> hx;  // Omega_x/2 at step midpoints, axis phase 0
  std::vector<double> hy;
};

PulseTable pulse_table(PulseKind kind, const PmParams& pm, double rect_omega,
                       double t_pulse, double dt);

}  // namespace nvmag
