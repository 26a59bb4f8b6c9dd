#pragma once

#include <cstddef>
#include <string>

namespace nvmag::kernels {

// spinor batch, struct-of-arrays: state_l = (a, b) with a = ar + i*ai
struct Lanes {
  double* ar = nullptr;
  double* ai = nullptr;
  double* br = nullptr;
  double* bi = nullptr;
  std::size_t n = 0;
};

// One midpoint step of exp(-i dt (hx sx + hy sy + hz_l sz)) applied to every
// lane, with the lane-dependent part of hz affine in g: hz_l = hz0 + hzc*g[l].
using Su2StepFn = void (*)(const Lanes&, const double* g, double hz0,
                           double hzc, double hx, double hy, double dt);

// Diagonal free evolution by angle th_l = a0 + c*g[l]:
// a *= exp(-i th), b *= exp(+i th). Vector backends assume |c*g[l]| <= 0.5
// and fall back per lane beyond that.
using PhaseStepFn = void (*)(const Lanes&, const double* g, double a0,
                             double c);

struct Backend {
  const char* name;
  Su2StepFn su2_step;
  PhaseStepFn phase_step;
};

const Backend& scalar_backend();
#ifdef NVMAG_HAVE_AVX2
const Backend& avx2_backend();
#endif

// runtime-selected backend: AVX2 when the CPU supports it, else scalar;
// NVMAG_KERNEL=scalar|avx2 overrides
const Backend& active();
bool select(const std::string& name);  // "auto" | "scalar" | "avx2"
bool avx2_available();

}  // namespace nvmag::kernels
