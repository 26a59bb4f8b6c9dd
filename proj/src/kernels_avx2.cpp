#ifdef NVMAG_HAVE_AVX2

#include <immintrin.h>

#include <cmath>

#include "nvmag/kernels.hpp"

namespace nvmag::kernels {

namespace {

// cos(th) and sin(th)/th for th^2 <= 0.25, even Taylor series in x = th^2;
// the trailing terms are below 1e-13 at the domain edge
inline void sincos_small(__m256d x, __m256d& c, __m256d& sinc) {
  const __m256d c0 = _mm256_set1_pd(1.0);
  __m256d p = _mm256_set1_pd(1.0 / 479001600.0);
  p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(-1.0 / 3628800.0));
  p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(1.0 / 40320.0));
  p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(-1.0 / 720.0));
  p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(1.0 / 24.0));
  p = _mm256_fmadd_pd(p, x, _mm256_set1_pd(-0.5));
  c = _mm256_fmadd_pd(p, x, c0);
  __m256d q = _mm256_set1_pd(1.0 / 6227020800.0);
  q = _mm256_fmadd_pd(q, x, _mm256_set1_pd(-1.0 / 39916800.0));
  q = _mm256_fmadd_pd(q, x, _mm256_set1_pd(1.0 / 362880.0));
  q = _mm256_fmadd_pd(q, x, _mm256_set1_pd(-1.0 / 5040.0));
  q = _mm256_fmadd_pd(q, x, _mm256_set1_pd(1.0 / 120.0));
  q = _mm256_fmadd_pd(q, x, _mm256_set1_pd(-1.0 / 6.0));
  sinc = _mm256_fmadd_pd(q, x, c0);
}

inline void su2_lane_ref(const Lanes& s, std::size_t l, double hz, double hx,
                         double hy, double dt) {
  const double r = std::sqrt(hx * hx + hy * hy + hz * hz);
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

void su2_step_avx2(const Lanes& s, const double* g, double hz0, double hzc,
                   double hx, double hy, double dt) {
  const __m256d vhz0 = _mm256_set1_pd(hz0);
  const __m256d vhzc = _mm256_set1_pd(hzc);
  const __m256d vhx = _mm256_set1_pd(hx);
  const __m256d vhy = _mm256_set1_pd(hy);
  const __m256d vdt = _mm256_set1_pd(dt);
  const __m256d vxy2 = _mm256_set1_pd(hx * hx + hy * hy);
  const __m256d limit = _mm256_set1_pd(0.25);
  std::size_t l = 0;
  for (; l + 4 <= s.n; l += 4) {
    const __m256d vg = _mm256_loadu_pd(g + l);
    const __m256d hz = _mm256_fmadd_pd(vhzc, vg, vhz0);
    const __m256d r2 = _mm256_fmadd_pd(hz, hz, vxy2);
    const __m256d th2 = _mm256_mul_pd(_mm256_mul_pd(r2, vdt), vdt);
    if (_mm256_movemask_pd(_mm256_cmp_pd(th2, limit, _CMP_GT_OQ)) != 0) {
      alignas(32) double hzl[4];
      _mm256_store_pd(hzl, hz);
      for (int k = 0; k < 4; ++k) su2_lane_ref(s, l + k, hzl[k], hx, hy, dt);
      continue;
    }
    __m256d c, sinc;
    sincos_small(th2, c, sinc);
    __m256d sc = _mm256_mul_pd(sinc, vdt);
    // renormalize (c, sc) so the step is unitary to rounding
    const __m256d n2 = _mm256_fmadd_pd(_mm256_mul_pd(sc, sc), r2,
                                       _mm256_mul_pd(c, c));
    const __m256d inv = _mm256_div_pd(_mm256_set1_pd(1.0), _mm256_sqrt_pd(n2));
    c = _mm256_mul_pd(c, inv);
    sc = _mm256_mul_pd(sc, inv);
    const __m256d ar = _mm256_loadu_pd(s.ar + l);
    const __m256d ai = _mm256_loadu_pd(s.ai + l);
    const __m256d br = _mm256_loadu_pd(s.br + l);
    const __m256d bi = _mm256_loadu_pd(s.bi + l);
    const __m256d t1r = _mm256_fmadd_pd(hz, ar, _mm256_fmadd_pd(vhx, br, _mm256_mul_pd(vhy, bi)));
    const __m256d t1i = _mm256_fmadd_pd(hz, ai, _mm256_fmsub_pd(vhx, bi, _mm256_mul_pd(vhy, br)));
    const __m256d t2r = _mm256_fmsub_pd(vhx, ar, _mm256_fmadd_pd(vhy, ai, _mm256_mul_pd(hz, br)));
    const __m256d t2i = _mm256_fmadd_pd(vhx, ai, _mm256_fmsub_pd(vhy, ar, _mm256_mul_pd(hz, bi)));
    _mm256_storeu_pd(s.ar + l, _mm256_fmadd_pd(c, ar, _mm256_mul_pd(sc, t1i)));
    _mm256_storeu_pd(s.ai + l, _mm256_fmsub_pd(c, ai, _mm256_mul_pd(sc, t1r)));
    _mm256_storeu_pd(s.br + l, _mm256_fmadd_pd(c, br, _mm256_mul_pd(sc, t2i)));
    _mm256_storeu_pd(s.bi + l, _mm256_fmsub_pd(c, bi, _mm256_mul_pd(sc, t2r)));
  }
  for (; l < s.n; ++l) su2_lane_ref(s, l, hz0 + hzc * g[l], hx, hy, dt);
}

inline void phase_lane_ref(const Lanes& s, std::size_t l, double th) {
  const double ct = std::cos(th);
  const double st = std::sin(th);
  const double ar = s.ar[l], ai = s.ai[l], br = s.br[l], bi = s.bi[l];
  s.ar[l] = ct * ar + st * ai;
  s.ai[l] = ct * ai - st * ar;
  s.br[l] = ct * br - st * bi;
  s.bi[l] = ct * bi + st * br;
}

void phase_step_avx2(const Lanes& s, const double* g, double a0, double c) {
  const double ca = std::cos(a0);
  const double sa = std::sin(a0);
  const __m256d vca = _mm256_set1_pd(ca);
  const __m256d vsa = _mm256_set1_pd(sa);
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d limit = _mm256_set1_pd(0.25);
  std::size_t l = 0;
  for (; l + 4 <= s.n; l += 4) {
    const __m256d vg = _mm256_loadu_pd(g + l);
    const __m256d d = _mm256_mul_pd(vc, vg);
    const __m256d d2 = _mm256_mul_pd(d, d);
    if (_mm256_movemask_pd(_mm256_cmp_pd(d2, limit, _CMP_GT_OQ)) != 0) {
      alignas(32) double dl[4];
      _mm256_store_pd(dl, d);
      for (int k = 0; k < 4; ++k) phase_lane_ref(s, l + k, a0 + dl[k]);
      continue;
    }
    __m256d cd, sincd;
    sincos_small(d2, cd, sincd);
    const __m256d sd = _mm256_mul_pd(sincd, d);
    // angle addition keeps the wide part in libm accuracy
    const __m256d ct = _mm256_fmsub_pd(vca, cd, _mm256_mul_pd(vsa, sd));
    const __m256d st = _mm256_fmadd_pd(vsa, cd, _mm256_mul_pd(vca, sd));
    const __m256d ar = _mm256_loadu_pd(s.ar + l);
    const __m256d ai = _mm256_loadu_pd(s.ai + l);
    const __m256d br = _mm256_loadu_pd(s.br + l);
    const __m256d bi = _mm256_loadu_pd(s.bi + l);
    _mm256_storeu_pd(s.ar + l, _mm256_fmadd_pd(ct, ar, _mm256_mul_pd(st, ai)));
    _mm256_storeu_pd(s.ai + l, _mm256_fmsub_pd(ct, ai, _mm256_mul_pd(st, ar)));
    _mm256_storeu_pd(s.br + l, _mm256_fmsub_pd(ct, br, _mm256_mul_pd(st, bi)));
    _mm256_storeu_pd(s.bi + l, _mm256_fmadd_pd(ct, bi, _mm256_mul_pd(st, br)));
  }
  for (; l < s.n; ++l) phase_lane_ref(s, l, a0 + c * g[l]);
}

}  // namespace

const Backend& avx2_backend() {
  static const Backend b{"avx2", su2_step_avx2, phase_step_avx2};
  return b;
}

}  // namespace nvmag::kernels

#endif  // NVMAG_HAVE_AVX2
