#include <cmath>

#include "nvmag/kernels.hpp"

namespace nvmag::kernels {

namespace {

void su2_step_scalar(const Lanes& s, const double* g, double hz0, double hzc,
                     double hx, double hy, double dt) {
  for (std::size_t l = 0; l < s.n; ++l) {
    const double hz = hz0 + hzc * g[l];
    const double r2 = hx * hx + hy * hy + hz * hz;
    const double r = std::sqrt(r2);
    const double th = r * dt;
    double c = 0.0, sc = 0.0;
    if (th * th < 1e-28) {
      c = 1.0 - 0.5 * th * th;
      sc = dt;
    } else {
      c = std::cos(th);
      sc = std::sin(th) / r;
    }
    const double ar = s.ar[l], ai = s.ai[l], br = s.br[l], bi = s.bi[l];
    const double t1r = hz * ar + hx * br + hy * bi;
    const double t1i = hz * ai + hx * bi - hy * br;
    const double t2r = hx * ar - hy * ai - hz * br;
    const double t2i = hx * ai + hy * ar - hz * bi;
    s.ar[l] = c * ar + sc * t1i;
    s.ai[l] = c * ai - sc * t1r;
    s.br[l] = c * br + sc * t2i;
    s.bi[l] = c * bi - sc * t2r;
  }
}

void phase_step_scalar(const Lanes& s, const double* g, double a0, double c) {
  for (std::size_t l = 0; l < s.n; ++l) {
    const double th = a0 + c * g[l];
    const double ct = std::cos(th);
    const double st = std::sin(th);
    const double ar = s.ar[l], ai = s.ai[l], br = s.br[l], bi = s.bi[l];
    s.ar[l] = ct * ar + st * ai;
    s.ai[l] = ct * ai - st * ar;
    s.br[l] = ct * br - st * bi;
    s.bi[l] = ct * bi + st * br;
  }
}

}  // namespace

const Backend& scalar_backend() {
  static const Backend b{"scalar", su2_step_scalar, phase_step_scalar};
  return b;
}

}  // namespace nvmag::kernels
