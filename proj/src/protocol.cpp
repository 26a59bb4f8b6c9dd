#include "nvmag/protocol.hpp"

#include <cmath>
#include <stdexcept>

#include "nvmag/kernels.hpp"

namespace nvmag {

namespace {

constexpr std::uint64_t ou_stream_tag = 0x4F550000ull;

struct GapBounds {
  std::vector<double> t0, t1;
};

GapBounds gap_bounds(const Sequence& seq) {
  GapBounds g;
  const auto n = seq.pulses.size();
  g.t0.resize(n + 1);
  g.t1.resize(n + 1);
  double prev_end = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    g.t0[k] = prev_end;
    g.t1[k] = seq.pulses[k].start;
    prev_end = seq.pulses[k].start + seq.pulses[k].duration;
  }
  g.t0[n] = prev_end;
  g.t1[n] = seq.total_time();
  return g;
}

struct State {
  std::vector<double> ar, ai, br, bi;
  kernels::Lanes lanes;

  explicit State(std::size_t n)
      : ar(n, 1.0 / std::sqrt(2.0)),
        ai(n, 0.0),
        br(n, 0.0),
        bi(n, -1.0 / std::sqrt(2.0)) {
    lanes = kernels::Lanes{ar.data(), ai.data(), br.data(), bi.data(), n};
  }

  double p0(std::size_t l) const {
    const double re = ar[l] - bi[l];
    const double im = ai[l] + br[l];
    return 0.5 * (re * re + im * im);
  }
};

}  // namespace

std::vector<double> run_protocol_batch(const Sequence& seq,
                                       const std::vector<double>& g_ac,
                                       double delta_static,
                                       const OuTrajectory& ou,
                                       double pulse_dt) {
  if (seq.pulses.empty()) throw std::invalid_argument("run_protocol: empty sequence");
  const bool noisy = ou.values.size() >= 2;
  if (noisy && ou.duration() < seq.total_time() - 1e-9)
    throw std::invalid_argument("run_protocol: noise trajectory shorter than sequence");

  const auto& k = kernels::active();
  const std::size_t nl = g_ac.size();
  State st(nl);

  const PulseTable pt =
      pulse_table(seq.kind, seq.pm, seq.rect_omega, seq.t_pulse, pulse_dt);
  const double om = seq.ac_omega();
  const GapBounds gaps = gap_bounds(seq);

  // ac cosine at the step midpoints of pulse 0; pulse k flips sign with
  // parity because om * period = pi
  std::vector<double> ac0(static_cast<std::size_t>(pt.steps));
  for (int s = 0; s < pt.steps; ++s)
    ac0[static_cast<std::size_t>(s)] = std::cos(
        om * (seq.pulses[0].start + (static_cast<double>(s) + 0.5) * pt.dt));

  std::vector<double> hx(static_cast<std::size_t>(pt.steps));
  std::vector<double> hy(static_cast<std::size_t>(pt.steps));

  auto apply_gap = [&](std::size_t gi) {
    const double t0 = gaps.t0[gi], t1 = gaps.t1[gi];
    if (t1 <= t0) return;
    double a0 = 0.5 * delta_static * (t1 - t0);
    if (noisy) a0 += 0.5 * ou.integral(t0, t1);
    const double c = (std::sin(om * t1) - std::sin(om * t0)) / om;
    k.phase_step(st.lanes, g_ac.data(), a0, c);
  };

  apply_gap(0);
  for (std::size_t p = 0; p < seq.pulses.size(); ++p) {
    const auto& pulse = seq.pulses[p];
    const double ca = std::cos(pulse.axis_phase);
    const double sa = std::sin(pulse.axis_phase);
    for (int s = 0; s < pt.steps; ++s) {
      const auto su = static_cast<std::size_t>(s);
      hx[su] = pt.hx[su] * ca - pt.hy[su] * sa;
      hy[su] = pt.hx[su] * sa + pt.hy[su] * ca;
    }
    const double sign = (p % 2 == 0) ? 1.0 : -1.0;
    for (int s = 0; s < pt.steps; ++s) {
      const auto su = static_cast<std::size_t>(s);
      const double tm = pulse.start + (static_cast<double>(s) + 0.5) * pt.dt;
      const double hz0 =
          0.5 * (delta_static + (noisy ? ou.at(tm) : 0.0));
      k.su2_step(st.lanes, g_ac.data(), hz0, sign * ac0[su], hx[su], hy[su],
                 pt.dt);
    }
    apply_gap(p + 1);
  }

  std::vector<double> out(nl);
  for (std::size_t l = 0; l < nl; ++l) out[l] = st.p0(l);
  return out;
}

double run_protocol(const Sequence& seq, double g_ac, double delta_static,
                    const OuTrajectory& ou, double pulse_dt) {
  return run_protocol_batch(seq, {g_ac}, delta_static, ou, pulse_dt)[0];
}

double run_protocol_dense(const Sequence& seq, double g_ac,
                          double delta_static, const OuTrajectory& ou,
                          double pulse_dt, double gap_dt) {
  const bool noisy = ou.values.size() >= 2;
  const double om = seq.ac_omega();
  const PulseTable pt =
      pulse_table(seq.kind, seq.pm, seq.rect_omega, seq.t_pulse, pulse_dt);
  const GapBounds gaps = gap_bounds(seq);
  HamiltonianTrack track;

  auto add_gap = [&](std::size_t gi) {
    double t = gaps.t0[gi];
    const double end = gaps.t1[gi];
    while (t < end - 1e-12) {
      // break at the noise grid so each slice sees the interpolant midpoint
      double next = noisy
          ? std::min(end, (std::floor(t / ou.grid_dt + 1e-12) + 1.0) * ou.grid_dt)
          : std::min(end, t + gap_dt);
      Segment s;
      s.length = next - t;
      s.delta = delta_static + (noisy ? ou.at(0.5 * (t + next)) : 0.0);
      s.g_ac = g_ac;
      s.om_ac = om;
      track.segments.push_back(s);
      t = next;
    }
  };

  add_gap(0);
  for (std::size_t p = 0; p < seq.pulses.size(); ++p) {
    const auto& pulse = seq.pulses[p];
    const double ca = std::cos(pulse.axis_phase);
    const double sa = std::sin(pulse.axis_phase);
    for (int s = 0; s < pt.steps; ++s) {
      const auto su = static_cast<std::size_t>(s);
      const double tm = pulse.start + (static_cast<double>(s) + 0.5) * pt.dt;
      Segment seg;
      seg.length = pt.dt;
      seg.delta = delta_static + (noisy ? ou.at(tm) : 0.0);
      seg.om_x = 2.0 * (pt.hx[su] * ca - pt.hy[su] * sa);
      seg.om_y = 2.0 * (pt.hx[su] * sa + pt.hy[su] * ca);
      seg.g_ac = g_ac;
      seg.om_ac = om;
      track.segments.push_back(seg);
    }
    add_gap(p + 1);
  }

  const Mat2 u = propagate(track, std::max(gap_dt, pulse_dt) + 1.0);
  // prep (1, -i)/sqrt(2); readout amplitude (psi_a + i psi_b)/sqrt(2)
  const cplx amp =
      0.5 * (u.m00 - cplx(0.0, 1.0) * u.m01 + cplx(0.0, 1.0) * u.m10 + u.m11);
  return std::norm(amp);
}

std::vector<double> ensemble_populations(const Sequence& seq,
                                         const std::vector<double>& g_ac,
                                         const NoiseConfig& noise,
                                         int n_detunings, int n_trajectories,
                                         std::uint64_t seed, double pulse_dt) {
  if (n_detunings < 1 || n_trajectories < 1)
    throw std::invalid_argument("ensemble_populations: ensemble sizes < 1");
  const DetuningGrid grid =
      detuning_grid(noise.w, noise.sigma_static(), n_detunings);
  std::vector<double> acc(g_ac.size(), 0.0);
  const double traj_weight = 1.0 / static_cast<double>(n_trajectories);
  for (int j = 0; j < n_trajectories; ++j) {
    Rng rng(seed, ou_stream_tag + static_cast<std::uint64_t>(j));
    const OuTrajectory ou =
        ou_trajectory(seq.total_time(), default_gap_dt, noise, rng);
    for (int i = 0; i < n_detunings; ++i) {
      const auto p = run_protocol_batch(seq, g_ac, grid.delta[static_cast<std::size_t>(i)], ou, pulse_dt);
      const double w = grid.weight[static_cast<std::size_t>(i)] * traj_weight;
      for (std::size_t l = 0; l < p.size(); ++l) acc[l] += w * p[l];
    }
  }
  return acc;
}

}  // namespace nvmag
