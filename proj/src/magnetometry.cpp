#include "nvmag/magnetometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nvmag {

ResponseCurve response_curve(const Sequence& seq,
                             const std::vector<double>& b_nt,
                             const NoiseConfig& noise, const EnsembleSpec& ens,
                             std::uint64_t seed, double pulse_dt) {
  ResponseCurve curve;
  curve.b_nt = b_nt;
  curve.total_time = seq.total_time();
  std::vector<double> g(b_nt.size());
  for (std::size_t i = 0; i < b_nt.size(); ++i) g[i] = gamma_nv * b_nt[i];
  curve.population = ensemble_populations(
      seq, g, noise, ens.n_detunings, ens.n_trajectories, seed, pulse_dt);
  return curve;
}

double ensemble_population(const Sequence& seq, double b_nt,
                           const NoiseConfig& noise, const EnsembleSpec& ens,
                           std::uint64_t seed, int shots, Rng& readout_rng,
                           double pulse_dt) {
  if (shots < 1) throw std::invalid_argument("ensemble_population: shots < 1");
  const auto p = ensemble_populations(seq, {gamma_nv * b_nt}, noise,
                                      ens.n_detunings, ens.n_trajectories,
                                      seed, pulse_dt);
  const double sigma_eff =
      noise.readout_sigma / std::sqrt(static_cast<double>(shots));
  return p[0] + readout_rng.normal(0.0, sigma_eff);
}

double contrast(const ResponseCurve& curve) {
  if (curve.population.empty()) return 0.0;
  const auto [lo, hi] =
      std::minmax_element(curve.population.begin(), curve.population.end());
  return *hi - *lo;
}

double first_branch_b(const Sequence& seq) {
  return pi * pi / (4.0 * gamma_nv * seq.total_time());
}

SlopeEstimate max_slope(const ResponseCurve& curve, double b_branch) {
  SlopeEstimate est;
  const auto n = curve.b_nt.size();
  if (n < 3) return est;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (curve.b_nt[i] > b_branch) break;
    const double db = curve.b_nt[i + 1] - curve.b_nt[i - 1];
    if (db <= 0.0) continue;
    const double k =
        std::abs((curve.population[i + 1] - curve.population[i - 1]) / db);
    if (k > est.k_max) {
      est.k_max = k;
      est.b_at = curve.b_nt[i];
    }
  }
  return est;
}

SensitivityReport sensitivity(double k_max, double b_at, double sigma,
                              double t_seconds) {
  if (k_max <= 0.0) throw std::invalid_argument("sensitivity: k_max <= 0");
  SensitivityReport rep;
  rep.k_max = k_max;
  rep.b_at = b_at;
  rep.sigma = sigma;
  rep.t_seconds = t_seconds;
  rep.eta = sigma * std::sqrt(t_seconds) / k_max;
  return rep;
}

Inversion field_from_population(double population, const Sequence& seq) {
  Inversion inv;
  double y = 2.0 * population - 1.0;
  if (y > 1.0) {
    y = 1.0;
    inv.clamped = true;
  } else if (y < -1.0) {
    y = -1.0;
    inv.clamped = true;
  }
  const double phase = std::acos(y);  // in [0, pi], the first branch
  inv.b_nt = phase * pi / (4.0 * gamma_nv * seq.total_time());
  return inv;
}

}  // namespace nvmag
