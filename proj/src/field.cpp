#include "nvmag/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nvmag {

FieldMap make_field(const std::vector<GaussianBump>& bumps, int width,
                    int height) {
  if (bumps.empty()) throw std::invalid_argument("make_field: no extrema");
  for (const auto& b : bumps)
    if (b.width <= 0.0) throw std::invalid_argument("make_field: degenerate bump");
  FieldMap map;
  map.width = width;
  map.height = height;
  map.values.resize(static_cast<std::size_t>(width) * height);
  for (int iy = 0; iy < height; ++iy) {
    const double y = (iy + 0.5) / height;
    for (int ix = 0; ix < width; ++ix) {
      const double x = (ix + 0.5) / width;
      double v = 0.0;
      for (const auto& b : bumps) {
        const double dx = x - b.cx, dy = y - b.cy;
        v += b.sign * b.amplitude *
             std::exp(-0.5 * (dx * dx + dy * dy) / (b.width * b.width));
      }
      map.at(ix, iy) = v;
    }
  }
  const auto [lo, hi] = std::minmax_element(map.values.begin(), map.values.end());
  const double span = *hi - *lo;
  if (span <= 0.0) throw std::invalid_argument("make_field: constant field");
  const double vmin = *lo;
  for (auto& v : map.values) v = (v - vmin) / span;
  return map;
}

FieldMap preset_field(const std::string& name, int width, int height) {
  if (name == "one")
    return make_field({{0.423, 0.547, 0.40, 1.0, 1.0}}, width, height);
  if (name == "two")
    return make_field({{0.223, 0.227, 0.29, 1.0, 1.0},
                       {0.777, 0.773, 0.29, 0.92, 1.0}},
                      width, height);
  if (name == "three")
    return make_field({{0.175, 0.225, 0.260, 1.0, 1.0},
                       {0.825, 0.185, 0.255, 0.92, 1.0},
                       {0.503, 0.845, 0.257, 0.96, 1.0}},
                      width, height);
  throw std::invalid_argument("preset_field: unknown preset " + name);
}

int preset_version(const std::string& name) {
  if (name == "one" || name == "two" || name == "three") return 1;
  return 0;
}

double sample_field(const FieldMap& map, double x, double y) {
  if (x < 0.0 || x > 1.0 || y < 0.0 || y > 1.0)
    throw std::invalid_argument("sample_field: coordinate out of extent");
  const double u = std::clamp(x * map.width - 0.5, 0.0, map.width - 1.0);
  const double v = std::clamp(y * map.height - 0.5, 0.0, map.height - 1.0);
  const int ix = std::min(static_cast<int>(u), map.width - 2);
  const int iy = std::min(static_cast<int>(v), map.height - 2);
  const double fx = u - ix, fy = v - iy;
  return map.at(ix, iy) * (1.0 - fx) * (1.0 - fy) +
         map.at(ix + 1, iy) * fx * (1.0 - fy) +
         map.at(ix, iy + 1) * (1.0 - fx) * fy +
         map.at(ix + 1, iy + 1) * fx * fy;
}

int count_local_maxima(const FieldMap& map) {
  int count = 0;
  for (int iy = 0; iy < map.height; ++iy) {
    for (int ix = 0; ix < map.width; ++ix) {
      const double v = map.at(ix, iy);
      bool is_max = true;
      for (int dy = -1; dy <= 1 && is_max; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (dx == 0 && dy == 0) continue;
          const int jx = ix + dx, jy = iy + dy;
          if (jx < 0 || jy < 0 || jx >= map.width || jy >= map.height) continue;
          if (map.at(jx, jy) >= v) {
            is_max = false;
            break;
          }
        }
      }
      if (is_max) ++count;
    }
  }
  return count;
}

}  // namespace nvmag
