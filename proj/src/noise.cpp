#include "nvmag/noise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nvmag {

double sample_static_detuning(const NoiseConfig& cfg, Rng& rng) {
  return rng.normal(0.0, cfg.sigma_static());
}

double ou_step(double x, double dt, double tau, double c, Rng& rng) {
  const double decay = std::exp(-dt / tau);
  const double var = 0.5 * c * tau * (1.0 - decay * decay);
  return x * decay + std::sqrt(var) * rng.normal();
}

double OuTrajectory::at(double t) const {
  if (values.empty()) return 0.0;
  const double u = t / grid_dt;
  const auto n = static_cast<long>(values.size());
  long k = static_cast<long>(std::floor(u));
  k = std::clamp(k, 0l, n - 2);
  const double f = u - static_cast<double>(k);
  return values[k] * (1.0 - f) + values[k + 1] * f;
}

double OuTrajectory::integral(double t0, double t1) const {
  if (values.size() < 2 || t1 <= t0) return 0.0;
  const auto cell = [&](long k, double u0, double u1) {
    // integral over fractional span [u0,u1] of cell k, u in [0,1]
    const double y0 = values[k], y1 = values[k + 1];
    const double f0 = y0 + (y1 - y0) * u0;
    const double f1 = y0 + (y1 - y0) * u1;
    return 0.5 * (f0 + f1) * (u1 - u0) * grid_dt;
  };
  const auto n = static_cast<long>(values.size());
  const double ua = t0 / grid_dt, ub = t1 / grid_dt;
  long ka = std::clamp(static_cast<long>(std::floor(ua)), 0l, n - 2);
  long kb = std::clamp(static_cast<long>(std::floor(ub)), 0l, n - 2);
  if (ka == kb) return cell(ka, ua - ka, ub - kb);
  double acc = cell(ka, ua - ka, 1.0);
  for (long k = ka + 1; k < kb; ++k) acc += cell(k, 0.0, 1.0);
  acc += cell(kb, 0.0, ub - kb);
  return acc;
}

OuTrajectory ou_trajectory(double duration, double grid_dt,
                           const NoiseConfig& cfg, Rng& rng) {
  if (grid_dt <= 0.0) throw std::invalid_argument("ou_trajectory: grid_dt <= 0");
  if (duration < 0.0) throw std::invalid_argument("ou_trajectory: negative duration");
  OuTrajectory traj;
  traj.grid_dt = grid_dt;
  const auto steps = static_cast<std::size_t>(std::ceil(duration / grid_dt));
  traj.values.resize(steps + 1);
  const double c = cfg.diffusion_c();
  double x = cfg.sqrt_c_tau_half * rng.normal();
  traj.values[0] = x;
  const double decay = std::exp(-grid_dt / cfg.tau);
  const double step_sigma =
      std::sqrt(0.5 * c * cfg.tau * (1.0 - decay * decay));
  for (std::size_t k = 1; k <= steps; ++k) {
    x = x * decay + step_sigma * rng.normal();
    traj.values[k] = x;
  }
  return traj;
}

DetuningGrid detuning_grid(double w, double sigma, int m) {
  if (m < 1) throw std::invalid_argument("detuning_grid: m < 1");
  DetuningGrid grid;
  grid.delta.resize(m);
  grid.weight.resize(m);
  if (m == 1) {
    grid.delta[0] = 0.0;
    grid.weight[0] = 1.0;
    return grid;
  }
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    const double d = -w + 2.0 * w * static_cast<double>(i) / (m - 1);
    grid.delta[i] = d;
    const double g =
        sigma > 0.0 ? std::exp(-0.5 * d * d / (sigma * sigma)) : 1.0;
    grid.weight[i] = g;
    total += g;
  }
  for (auto& v : grid.weight) v /= total;
  return grid;
}

}  // namespace nvmag
