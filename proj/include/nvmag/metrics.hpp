#pragma once

#include <vector>

#include "nvmag/field.hpp"
#include "nvmag/sampling.hpp"

namespace nvmag {

struct MetricsReport {
  double mae = 0.0;
  double rmse = 0.0;
  double psnr_db = 0.0;  // +inf when the maps are identical
  double r2 = 0.0;
  double ssim = 0.0;
  double data_range = 1.0;
  int pixels = 0;
};

double mae(const FieldMap& truth, const FieldMap& pred);
double rmse(const FieldMap& truth, const FieldMap& pred);
double psnr(const FieldMap& truth, const FieldMap& pred, double data_range = 1.0);
double r2(const FieldMap& truth, const FieldMap& pred);

// 11x11 Gaussian window (sigma 1.5), K1 = 0.01, K2 = 0.03, L = data_range,
// averaged over fully interior windows
double ssim(const FieldMap& truth, const FieldMap& pred, double data_range = 1.0);

MetricsReport compute_metrics(const FieldMap& truth, const FieldMap& pred,
                              double data_range = 1.0);

// each pixel takes the value of its nearest sample (baseline rendering of
// the raw measurements)
FieldMap nearest_neighbor_map(const std::vector<SamplePoint>& coords,
                              const std::vector<double>& values, int width,
                              int height);

}  // namespace nvmag
