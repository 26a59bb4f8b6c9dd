#pragma once

#include <string>
#include <vector>

namespace nvmag {

// normalized field on [0,1]^2, row-major from the top-left pixel;
// pixel (ix, iy) is centered at ((ix+0.5)/width, (iy+0.5)/height)
struct FieldMap {
  int width = 100;
  int height = 100;
  std::vector<double> values;
  double b_min = 0.0;  // physical window, nT
  double b_max = 0.0;

  double& at(int ix, int iy) { return values[static_cast<std::size_t>(iy) * width + ix]; }
  double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * width + ix]; }
  std::size_t pixels() const { return values.size(); }
};

struct GaussianBump {
  double cx = 0.5;
  double cy = 0.5;
  double width = 0.2;
  double amplitude = 1.0;
  double sign = 1.0;
};

// sum of isotropic Gaussians, affinely renormalized to [0,1]
FieldMap make_field(const std::vector<GaussianBump>& bumps, int width = 100,
                    int height = 100);

// presets: "one", "two", "three" (the three-bump field has exactly three
// local maxima under the 8-neighborhood test)
FieldMap preset_field(const std::string& name, int width = 100,
                      int height = 100);
int preset_version(const std::string& name);

// bilinear interpolation at continuous (x, y) in [0,1]^2
double sample_field(const FieldMap& map, double x, double y);

int count_local_maxima(const FieldMap& map);

}  // namespace nvmag
