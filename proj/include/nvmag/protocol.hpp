#pragma once

#include <cstdint>
#include <vector>

#include "nvmag/noise.hpp"
#include "nvmag/sequence.hpp"

namespace nvmag {

inline constexpr double default_pulse_dt = 0.5;  // ns
inline constexpr double default_gap_dt = 2.0;    // ns

// P0 after prep pi/2, the XY-8 train under one noise realization, and the
// matched readout pi/2; batched over ac amplitudes with shared noise
std::vector<double> run_protocol_batch(const Sequence& seq,
                                       const std::vector<double>& g_ac,
                                       double delta_static,
                                       const OuTrajectory& ou,
                                       double pulse_dt = default_pulse_dt);

double run_protocol(const Sequence& seq, double g_ac, double delta_static,
                    const OuTrajectory& ou,
                    double pulse_dt = default_pulse_dt);

// same observable evolved segment by segment through propagate; the noise
// trajectory is sliced onto the track at its own grid (equivalence oracle)
double run_protocol_dense(const Sequence& seq, double g_ac,
                          double delta_static, const OuTrajectory& ou,
                          double pulse_dt = default_pulse_dt,
                          double gap_dt = default_gap_dt);

// mean P0 over the static-detuning grid and n_traj OU trajectories, one
// value per requested ac amplitude; trajectories are shared across
// amplitudes (common random numbers)
std::vector<double> ensemble_populations(const Sequence& seq,
                                         const std::vector<double>& g_ac,
                                         const NoiseConfig& noise,
                                         int n_detunings, int n_trajectories,
                                         std::uint64_t seed,
                                         double pulse_dt = default_pulse_dt);

}  // namespace nvmag
