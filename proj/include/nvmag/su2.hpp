#pragma once

#include <cmath>
#include <complex>

namespace nvmag {

using cplx = std::complex<double>;

// 2x2 complex matrix, row-major
struct Mat2 {
  cplx m00{1.0, 0.0}, m01{0.0, 0.0}, m10{0.0, 0.0}, m11{1.0, 0.0};

  static Mat2 identity() { return Mat2{}; }

  Mat2 operator*(const Mat2& o) const {
    return Mat2{m00 * o.m00 + m01 * o.m10, m00 * o.m01 + m01 * o.m11,
                m10 * o.m00 + m11 * o.m10, m10 * o.m01 + m11 * o.m11};
  }

  Mat2 dagger() const {
    return Mat2{std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
  }

  cplx trace() const { return m00 + m11; }
};

// exp(-i t (hx sx + hy sy + hz sz)) closed form
inline Mat2 su2_exp(double hx, double hy, double hz, double t) {
  const double r = std::sqrt(hx * hx + hy * hy + hz * hz);
  const double th = r * t;
  double c = 0.0, sc = 0.0;  // cos(th), sin(th)/r
  if (r * t * r * t < 1e-28) {
    c = 1.0 - 0.5 * th * th;
    sc = t * (1.0 - th * th / 6.0);
  } else {
    c = std::cos(th);
    sc = std::sin(th) / r;
  }
  return Mat2{cplx(c, -sc * hz), cplx(-sc * hy, -sc * hx),
              cplx(sc * hy, -sc * hx), cplx(c, sc * hz)};
}

inline double frobenius_dist(const Mat2& a, const Mat2& b) {
  auto n2 = [](cplx z) { return std::norm(z); };
  return std::sqrt(n2(a.m00 - b.m00) + n2(a.m01 - b.m01) +
                   n2(a.m10 - b.m10) + n2(a.m11 - b.m11));
}

// || U U^dag - I ||_F
inline double unitarity_error(const Mat2& u) {
  return frobenius_dist(u * u.dagger(), Mat2::identity());
}

inline Mat2 pauli_x() { return Mat2{cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)}; }
inline Mat2 pauli_y() { return Mat2{cplx(0, 0), cplx(0, -1), cplx(0, 1), cplx(0, 0)}; }
inline Mat2 pauli_z() { return Mat2{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(-1, 0)}; }

}  // namespace nvmag
