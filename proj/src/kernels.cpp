#include "nvmag/kernels.hpp"

#include <cstdlib>

namespace nvmag::kernels {

bool avx2_available() {
#ifdef NVMAG_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

const Backend* pick_auto() {
#ifdef NVMAG_HAVE_AVX2
  if (avx2_available()) return &avx2_backend();
#endif
  return &scalar_backend();
}

const Backend* initial() {
  if (const char* env = std::getenv("NVMAG_KERNEL")) {
    const std::string v(env);
    if (v == "scalar") return &scalar_backend();
#ifdef NVMAG_HAVE_AVX2
    if (v == "avx2" && avx2_available()) return &avx2_backend();
#endif
  }
  return pick_auto();
}

const Backend*& current() {
  static const Backend* b = initial();
  return b;
}

}  // namespace

const Backend& active() { return *current(); }

bool select(const std::string& name) {
  if (name == "auto") {
    current() = pick_auto();
    return true;
  }
  if (name == "scalar") {
    current() = &scalar_backend();
    return true;
  }
#ifdef NVMAG_HAVE_AVX2
  if (name == "avx2" && avx2_available()) {
    current() = &avx2_backend();
    return true;
  }
#endif
  return false;
}

}  // namespace nvmag::kernels
