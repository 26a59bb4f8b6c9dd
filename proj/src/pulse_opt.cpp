#include "nvmag/pulse_opt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nvmag/nelder_mead.hpp"
#include "nvmag/rng.hpp"

namespace nvmag {

GateSpec GateSpec::rect_x(double t_pulse) {
  GateSpec g;
  g.kind = PulseKind::rect;
  g.t_pulse = t_pulse;
  g.rect_omega = pi / t_pulse;
  return g;
}

GateSpec GateSpec::pm_x(const PmParams& p) {
  GateSpec g;
  g.kind = PulseKind::pm;
  g.pm = p;
  g.t_pulse = p.natural_duration();
  return g;
}

Mat2 target_unitary(GateTarget t) {
  return su2_exp(t == GateTarget::x ? 1.0 : 0.0,
                 t == GateTarget::y ? 1.0 : 0.0, 0.0, 0.5 * pi);
}

namespace {

// rows of the rotation picture of u: R[i][j] = Tr(sigma_i u sigma_j u^dag)/2
void transfer_matrix(const Mat2& u, double r[3][3]) {
  const Mat2 sig[3] = {pauli_x(), pauli_y(), pauli_z()};
  const Mat2 ud = u.dagger();
  for (int j = 0; j < 3; ++j) {
    const Mat2 m = u * sig[j] * ud;
    for (int i = 0; i < 3; ++i)
      r[i][j] = 0.5 * (sig[i] * m).trace().real();
  }
}

}  // namespace

double gate_fidelity(const Mat2& u, const Mat2& target) {
  double ru[3][3], rt[3][3];
  transfer_matrix(u, ru);
  transfer_matrix(target, rt);
  double acc = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += rt[i][j] * ru[i][j];
  return 0.5 + acc / 6.0;
}

double gate_under_detuning(const GateSpec& gate, double delta, double dt) {
  const PulseTable pt =
      pulse_table(gate.kind, gate.pm, gate.rect_omega, gate.t_pulse, dt);
  HamiltonianTrack track;
  const double ca = std::cos(gate.axis_phase);
  const double sa = std::sin(gate.axis_phase);
  track.segments.reserve(static_cast<std::size_t>(pt.steps));
  for (int s = 0; s < pt.steps; ++s) {
    const auto su = static_cast<std::size_t>(s);
    Segment seg;
    seg.length = pt.dt;
    seg.delta = delta;
    seg.om_x = 2.0 * (pt.hx[su] * ca - pt.hy[su] * sa);
    seg.om_y = 2.0 * (pt.hx[su] * sa + pt.hy[su] * ca);
    track.segments.push_back(seg);
  }
  const Mat2 u = propagate(track, pt.dt + 1.0);
  return gate_fidelity(u, target_unitary(gate.target));
}

double ensemble_objective(const GateSpec& gate, double w, double sigma, int m,
                          double dt) {
  const DetuningGrid grid = detuning_grid(w, sigma, m);
  double acc = 0.0;
  for (int i = 0; i < m; ++i)
    acc += grid.weight[static_cast<std::size_t>(i)] *
           gate_under_detuning(gate, grid.delta[static_cast<std::size_t>(i)], dt);
  return acc;
}

PmOptResult optimize_pm(const PmParams& seed_params, double w, double sigma,
                        int m, int restarts, std::uint64_t seed, double dt) {
  if (seed_params.a.size() != 1)
    throw std::invalid_argument("optimize_pm: single-term waveform expected");

  auto objective = [&](const std::vector<double>& x) {
    const double a = x[0], b = x[1], nu = x[2];
    double penalty = 0.0;
    if (a > amplitude_budget)
      penalty += 1e4 * (a - amplitude_budget) * (a - amplitude_budget);
    if (a < 1e-4) penalty += 1e4 * (1e-4 - a) * (1e-4 - a);
    if (b < 0.0) penalty += 1e4 * b * b;
    if (nu < 5e-3) penalty += 1e4 * (5e-3 - nu) * (5e-3 - nu);
    if (nu > 0.2) penalty += 1e4 * (nu - 0.2) * (nu - 0.2);
    PmParams p;
    p.a = {std::clamp(a, 1e-4, amplitude_budget)};
    p.b = {std::max(b, 0.0)};
    p.nu = {std::clamp(nu, 5e-3, 0.2)};
    return -(ensemble_objective(GateSpec::pm_x(p), w, sigma, m, dt) - penalty);
  };

  PmOptResult res;
  res.params = seed_params;
  res.seed_objective =
      ensemble_objective(GateSpec::pm_x(seed_params), w, sigma, m, dt);
  res.objective = res.seed_objective;
  if (restarts <= 0) {
    res.budget_exhausted_warning = true;
    return res;
  }

  Rng rng(seed, 0x504dull);  // jitter stream for restarts past the seed point
  std::vector<double> best_x{seed_params.a[0], seed_params.b[0],
                             seed_params.nu[0]};
  double best_f = objective(best_x);
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> x0 = {seed_params.a[0], seed_params.b[0],
                              seed_params.nu[0]};
    if (r > 0)
      for (auto& v : x0) v *= 1.0 + 0.25 * (2.0 * rng.uniform() - 1.0);
    NmOptions opt;
    opt.max_iter = 220;
    opt.ftol = 1e-10;
    const std::vector<double> step = {0.1 * x0[0], 0.1 * x0[1], 0.1 * x0[2]};
    const NmResult nm = nelder_mead(objective, x0, step, opt);
    if (nm.f < best_f) {
      best_f = nm.f;
      best_x = nm.x;
    }
  }
  res.restarts_run = restarts;

  PmParams p;
  p.a = {std::clamp(best_x[0], 1e-4, amplitude_budget)};
  p.b = {std::max(best_x[1], 0.0)};
  p.nu = {std::clamp(best_x[2], 5e-3, 0.2)};
  const double obj = ensemble_objective(GateSpec::pm_x(p), w, sigma, m, dt);
  if (obj >= res.seed_objective) {
    res.params = p;
    res.objective = obj;
  }
  return res;
}

}  // namespace nvmag
