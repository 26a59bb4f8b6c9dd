#include "nvmag/metrics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nvmag {

namespace {

void check_shapes(const FieldMap& a, const FieldMap& b) {
  if (a.width != b.width || a.height != b.height)
    throw std::invalid_argument("metrics: shape mismatch");
}

}  // namespace

double mae(const FieldMap& truth, const FieldMap& pred) {
  check_shapes(truth, pred);
  double acc = 0.0;
  for (std::size_t i = 0; i < truth.values.size(); ++i)
    acc += std::abs(truth.values[i] - pred.values[i]);
  return acc / static_cast<double>(truth.values.size());
}

double rmse(const FieldMap& truth, const FieldMap& pred) {
  check_shapes(truth, pred);
  double acc = 0.0;
  for (std::size_t i = 0; i < truth.values.size(); ++i) {
    const double d = truth.values[i] - pred.values[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(truth.values.size()));
}

double psnr(const FieldMap& truth, const FieldMap& pred, double data_range) {
  const double r = rmse(truth, pred);
  if (r == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(data_range * data_range / (r * r));
}

double r2(const FieldMap& truth, const FieldMap& pred) {
  check_shapes(truth, pred);
  double mean = 0.0;
  for (double v : truth.values) mean += v;
  mean /= static_cast<double>(truth.values.size());
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < truth.values.size(); ++i) {
    const double d = truth.values[i] - pred.values[i];
    const double t = truth.values[i] - mean;
    ss_res += d * d;
    ss_tot += t * t;
  }
  if (ss_tot == 0.0)
    return ss_res == 0.0 ? 1.0 : -std::numeric_limits<double>::infinity();
  return 1.0 - ss_res / ss_tot;
}

double ssim(const FieldMap& truth, const FieldMap& pred, double data_range) {
  check_shapes(truth, pred);
  constexpr int half = 5;
  constexpr int win = 2 * half + 1;
  if (truth.width < win || truth.height < win)
    throw std::invalid_argument("ssim: map smaller than the 11x11 window");
  double w[win][win];
  double total = 0.0;
  for (int dy = -half; dy <= half; ++dy)
    for (int dx = -half; dx <= half; ++dx) {
      const double g = std::exp(-(dx * dx + dy * dy) / (2.0 * 1.5 * 1.5));
      w[dy + half][dx + half] = g;
      total += g;
    }
  for (auto& row : w)
    for (auto& v : row) v /= total;

  const double c1 = (0.01 * data_range) * (0.01 * data_range);
  const double c2 = (0.03 * data_range) * (0.03 * data_range);
  double acc = 0.0;
  std::size_t windows = 0;
  for (int cy = half; cy < truth.height - half; ++cy) {
    for (int cx = half; cx < truth.width - half; ++cx) {
      double mx = 0.0, my = 0.0, sxx = 0.0, syy = 0.0, sxy = 0.0;
      for (int dy = -half; dy <= half; ++dy)
        for (int dx = -half; dx <= half; ++dx) {
          const double wg = w[dy + half][dx + half];
          const double x = truth.at(cx + dx, cy + dy);
          const double y = pred.at(cx + dx, cy + dy);
          mx += wg * x;
          my += wg * y;
          sxx += wg * x * x;
          syy += wg * y * y;
          sxy += wg * x * y;
        }
      sxx -= mx * mx;
      syy -= my * my;
      sxy -= mx * my;
      acc += (2.0 * mx * my + c1) * (2.0 * sxy + c2) /
             ((mx * mx + my * my + c1) * (sxx + syy + c2));
      ++windows;
    }
  }
  return acc / static_cast<double>(windows);
}

MetricsReport compute_metrics(const FieldMap& truth, const FieldMap& pred,
                              double data_range) {
  MetricsReport rep;
  rep.mae = mae(truth, pred);
  rep.rmse = rmse(truth, pred);
  rep.psnr_db = psnr(truth, pred, data_range);
  rep.r2 = r2(truth, pred);
  rep.ssim = ssim(truth, pred, data_range);
  rep.data_range = data_range;
  rep.pixels = static_cast<int>(truth.values.size());
  return rep;
}

FieldMap nearest_neighbor_map(const std::vector<SamplePoint>& coords,
                              const std::vector<double>& values, int width,
                              int height) {
  if (coords.empty() || coords.size() != values.size())
    throw std::invalid_argument("nearest_neighbor_map: bad inputs");
  FieldMap map;
  map.width = width;
  map.height = height;
  map.values.resize(static_cast<std::size_t>(width) * height);
  for (int iy = 0; iy < height; ++iy) {
    const double y = (iy + 0.5) / height;
    for (int ix = 0; ix < width; ++ix) {
      const double x = (ix + 0.5) / width;
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < coords.size(); ++i) {
        const double dx = coords[i].x - x, dy = coords[i].y - y;
        const double d = dx * dx + dy * dy;
        if (d < best_d) {
          best_d = d;
          best = i;
        }
      }
      map.at(ix, iy) = values[best];
    }
  }
  return map;
}

}  // namespace nvmag
