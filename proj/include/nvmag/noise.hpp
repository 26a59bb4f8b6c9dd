#pragma once

#include <vector>

#include "nvmag/constants.hpp"
#include "nvmag/rng.hpp"

namespace nvmag {

struct NoiseConfig {
  double w = default_w;                              // FWHM of static detuning spread, rad/ns
  double tau = default_tau_corr;                     // OU correlation time, ns
  double sqrt_c_tau_half = default_sqrt_c_tau_half;  // OU stationary std, rad/ns
  double readout_sigma = default_readout_sigma;      // per-shot readout std

  double sigma_static() const { return fwhm_to_sigma(w); }
  double stationary_var() const { return sqrt_c_tau_half * sqrt_c_tau_half; }
  double diffusion_c() const { return 2.0 * stationary_var() / tau; }
};

double sample_static_detuning(const NoiseConfig& cfg, Rng& rng);

// exact AR(1) update of the OU process over a step dt
double ou_step(double x, double dt, double tau, double c, Rng& rng);

// values on a uniform grid t_k = k*grid_dt covering [0, duration],
// stationary initial condition
struct OuTrajectory {
  double grid_dt = 2.0;
  std::vector<double> values;

  double duration() const {
    return values.empty() ? 0.0 : grid_dt * static_cast<double>(values.size() - 1);
  }
  // piecewise-linear interpolation
  double at(double t) const;
  // exact integral of the piecewise-linear interpolant over [t0, t1]
  double integral(double t0, double t1) const;
};

OuTrajectory ou_trajectory(double duration, double grid_dt,
                           const NoiseConfig& cfg, Rng& rng);

// uniform symmetric detuning grid on [-w, w] with normalized Gaussian weights
struct DetuningGrid {
  std::vector<double> delta;
  std::vector<double> weight;
};

DetuningGrid detuning_grid(double w, double sigma, int m);

}  // namespace nvmag
