#pragma once

#include <cstdint>
#include <vector>

#include "nvmag/field.hpp"
#include "nvmag/sampling.hpp"

namespace nvmag {

struct KrigingHyper {
  double alpha[2] = {1.0, 1.0};  // per-axis scale, >= 0
  double p[2] = {2.0, 2.0};      // exponents in [1, 2]
  double nugget = 0.0;
};

// exp(-sum_h alpha_h |xi_h - xj_h|^{p_h})
double correlation(const SamplePoint& a, const SamplePoint& b,
                   const KrigingHyper& hyper);

// generalized-least-squares mean and profiled variance through the
// factorized correlation matrix; false when factorization fails
bool gls_mean_var(const std::vector<SamplePoint>& coords,
                  const std::vector<double>& y, const KrigingHyper& hyper,
                  double& mu, double& sigma2);

bool log_det_r(const std::vector<SamplePoint>& coords,
               const KrigingHyper& hyper, double& out);

// concentrated form, -(n/2) ln sigma2 - (1/2) ln |R|, constants dropped;
// -1e300 sentinel on factorization failure or zero variance
double log_likelihood(const KrigingHyper& hyper,
                      const std::vector<SamplePoint>& coords,
                      const std::vector<double>& y);
inline constexpr double loglik_sentinel = -1e300;

struct KrigingModel {
  std::vector<SamplePoint> coords;
  std::vector<double> values;
  KrigingHyper hyper;
  double mu = 0.0;
  double sigma2 = 0.0;
  double loglik = 0.0;
  std::vector<double> weights;  // R^{-1}(y - mu)
  bool degenerate = false;      // constant data: predicts the constant
};

// factorize once and precompute the BLUP weights; throws on failure
KrigingModel build_model(const std::vector<SamplePoint>& coords,
                         const std::vector<double>& y,
                         const KrigingHyper& hyper);

// maximum-likelihood hypers by multi-start Nelder-Mead over
// (ln a1, ln a2, p1, p2); bounds ln a in [ln 1e-2, ln 1e3], p in [1, 2];
// adaptive nugget from 1e-10, x10 on failure, capped at 1e-4
KrigingModel fit(const std::vector<SamplePoint>& coords,
                 const std::vector<double>& y, int budget, std::uint64_t seed);

double predict(const KrigingModel& model, double x, double y);
FieldMap predict_grid(const KrigingModel& model, int width = 100,
                      int height = 100);

// mean-adjustment calibrations applied to measured values before fitting
std::vector<double> calibrate_bias(const std::vector<double>& values,
                                   const ReferenceSet& refs);
std::vector<double> calibrate_proportional(const std::vector<double>& values,
                                           const ReferenceSet& refs);

}  // namespace nvmag
