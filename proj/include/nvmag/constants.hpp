#pragma once

#include <cmath>

namespace nvmag {

inline constexpr double pi = 3.141592653589793238462643383279502884;

// angular units: rad/ns; time: ns; field: nT
inline constexpr double gamma_nv = 2.0 * pi * 28.0e-9;  // rad/ns per nT

// inhomogeneous broadening: FWHM W of the static detuning distribution
inline constexpr double default_w = 2.0 * pi * 26.5e-3;           // rad/ns
inline constexpr double default_tau_corr = 20000.0;               // ns
inline constexpr double default_sqrt_c_tau_half = 2.0 * pi * 50.0e-6;  // rad/ns
inline constexpr double default_readout_sigma = 0.01;

inline constexpr double default_pulse_a = 0.0628;   // rad/ns
inline constexpr double default_pulse_b = 0.0830;   // rad
inline constexpr double default_pulse_nu = 0.0316;  // rad/ns
inline constexpr double amplitude_budget = 0.0628;  // rad/ns

inline constexpr double default_t_pulse = 50.0;     // ns, rectangular
inline constexpr double default_period = 1000.0;    // ns, pulse-to-pulse spacing

inline double fwhm_to_sigma(double w) { return w / (2.0 * std::sqrt(2.0 * std::log(2.0))); }

}  // namespace nvmag
