#include "nvmag/sequence.hpp"

#include <cmath>
#include <stdexcept>

namespace nvmag {

std::pair<double, double> pm_waveform(const PmParams& p, double t) {
  double ox = 0.0, oy = 0.0;
  for (std::size_t j = 0; j < p.a.size(); ++j) {
    const double phase = p.b[j] / p.nu[j] * std::sin(p.nu[j] * t);
    ox += p.a[j] * std::cos(phase);
    oy += p.a[j] * std::sin(phase);
  }
  return {ox, oy};
}

Sequence build_xy8(int n_blocks, PulseKind kind, double period,
                   const PmParams& pm, double t_pulse_rect) {
  if (n_blocks < 1) throw std::invalid_argument("build_xy8: n_blocks < 1");
  Sequence seq;
  seq.kind = kind;
  seq.n_blocks = n_blocks;
  seq.period = period;
  seq.pm = pm;
  if (kind == PulseKind::rect) {
    seq.t_pulse = t_pulse_rect;
    seq.rect_omega = pi / t_pulse_rect;
  } else {
    seq.t_pulse = pm.natural_duration();
  }
  if (seq.t_pulse >= period)
    throw std::invalid_argument("build_xy8: pulse longer than period");
  static const double block_phase[8] = {0.0,      0.5 * pi, 0.0,      0.5 * pi,
                                        0.5 * pi, 0.0,      0.5 * pi, 0.0};
  seq.pulses.resize(static_cast<std::size_t>(seq.n_pulses()));
  for (int k = 0; k < seq.n_pulses(); ++k) {
    auto& p = seq.pulses[static_cast<std::size_t>(k)];
    p.duration = seq.t_pulse;
    p.start = (static_cast<double>(k) + 0.5) * period - 0.5 * seq.t_pulse;
    p.axis_phase = block_phase[k % 8];
  }
  return seq;
}

double modulation_function(double t, double omega, double offset) {
  return std::sin(omega * t + offset) >= 0.0 ? 1.0 : -1.0;
}

double ideal_population(double g_ac, double total_time) {
  return 0.5 * (1.0 + std::cos(4.0 * g_ac * total_time / pi));
}

Mat2 propagate(const HamiltonianTrack& track, double dt) {
  if (dt <= 0.0) throw std::invalid_argument("propagate: dt <= 0");
  Mat2 u = Mat2::identity();
  double t0 = 0.0;
  for (const auto& seg : track.segments) {
    if (seg.length <= 0.0) continue;
    const int n = static_cast<int>(std::ceil(seg.length / dt - 1e-12));
    const double h = seg.length / n;
    for (int s = 0; s < n; ++s) {
      const double tm = t0 + (static_cast<double>(s) + 0.5) * h;
      const double hz = 0.5 * seg.delta +
                        seg.g_ac * std::cos(seg.om_ac * tm + seg.ac_phase);
      u = su2_exp(0.5 * seg.om_x, 0.5 * seg.om_y, hz, h) * u;
    }
    t0 += seg.length;
  }
  return u;
}

PulseTable pulse_table(PulseKind kind, const PmParams& pm, double rect_omega,
                       double t_pulse, double dt) {
  PulseTable tab;
  tab.steps = static_cast<int>(std::ceil(t_pulse / dt - 1e-12));
  tab.dt = t_pulse / tab.steps;
  tab.hx.resize(static_cast<std::size_t>(tab.steps));
  tab.hy.resize(static_cast<std::size_t>(tab.steps));
  for (int s = 0; s < tab.steps; ++s) {
    const double tm = (static_cast<double>(s) + 0.5) * tab.dt;
    if (kind == PulseKind::rect) {
      tab.hx[static_cast<std::size_t>(s)] = 0.5 * rect_omega;
      tab.hy[static_cast<std::size_t>(s)] = 0.0;
    } else {
      const auto [ox, oy] = pm_waveform(pm, tm);
      tab.hx[static_cast<std::size_t>(s)] = 0.5 * ox;
      tab.hy[static_cast<std::size_t>(s)] = 0.5 * oy;
    }
  }
  return tab;
}

}  // namespace nvmag
