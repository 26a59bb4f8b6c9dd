#pragma once

#include <cstdint>
#include <vector>

#include "nvmag/protocol.hpp"

namespace nvmag {

struct EnsembleSpec {
  int n_detunings = 15;
  int n_trajectories = 20;
};

struct ResponseCurve {
  std::vector<double> b_nt;
  std::vector<double> population;
  double total_time = 0.0;  // ns
};

// noiseless-readout ensemble mean population over a field grid
ResponseCurve response_curve(const Sequence& seq,
                             const std::vector<double>& b_nt,
                             const NoiseConfig& noise, const EnsembleSpec& ens,
                             std::uint64_t seed,
                             double pulse_dt = default_pulse_dt);

// single measurement: ensemble mean plus one additive N(0, sigma^2/shots)
// readout draw
double ensemble_population(const Sequence& seq, double b_nt,
                           const NoiseConfig& noise, const EnsembleSpec& ens,
                           std::uint64_t seed, int shots, Rng& readout_rng,
                           double pulse_dt = default_pulse_dt);

double contrast(const ResponseCurve& curve);  // max - min of the mean curve

// field where the ideal phase reaches pi (end of the first monotonic branch)
double first_branch_b(const Sequence& seq);

struct SlopeEstimate {
  double k_max = 0.0;  // population per nT
  double b_at = 0.0;
};

// max |dP/dB| by central differences, restricted to the first branch
SlopeEstimate max_slope(const ResponseCurve& curve, double b_branch);

struct SensitivityReport {
  double k_max = 0.0;
  double b_at = 0.0;
  double sigma = 0.0;
  double t_seconds = 0.0;
  double eta = 0.0;  // nT per sqrt(Hz)
};

SensitivityReport sensitivity(double k_max, double b_at, double sigma,
                              double t_seconds);

struct Inversion {
  double b_nt = 0.0;
  bool clamped = false;
};

// invert a measured population through the ideal noiseless curve on the
// first branch; out-of-range populations clamp to the branch edge
Inversion field_from_population(double population, const Sequence& seq);

}  // namespace nvmag
