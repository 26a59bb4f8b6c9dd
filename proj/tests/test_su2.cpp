#include <doctest.h>

#include <cmath>
#include <complex>

#include "nvmag/constants.hpp"
#include "nvmag/rng.hpp"
#include "nvmag/su2.hpp"

using namespace nvmag;

TEST_CASE("zero generator gives the identity") {
  const Mat2 u = su2_exp(0.0, 0.0, 0.0, 17.3);
  CHECK(frobenius_dist(u, Mat2::identity()) < 1e-15);
}

TEST_CASE("resonant pi rotation about x is -i sigma_x") {
  // track Rabi rate pi/T enters the Hamiltonian as Omega/2
  const double t_pulse = 50.0;
  const Mat2 u = su2_exp(0.5 * (pi / t_pulse), 0.0, 0.0, t_pulse);
  Mat2 want = pauli_x();
  want.m00 *= cplx(0, -1);
  want.m01 *= cplx(0, -1);
  want.m10 *= cplx(0, -1);
  want.m11 *= cplx(0, -1);
  CHECK(frobenius_dist(u, want) < 1e-13);
}

TEST_CASE("off-resonant Rabi transfer matches the closed form") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const double omega = rng.uniform(0.01, 0.3);
    const double delta = rng.uniform(-0.3, 0.3);
    const double t = rng.uniform(1.0, 200.0);
    const Mat2 u = su2_exp(0.5 * omega, 0.0, 0.5 * delta, t);
    const double rabi2 = omega * omega + delta * delta;
    const double want =
        omega * omega / rabi2 * std::pow(std::sin(0.5 * std::sqrt(rabi2) * t), 2);
    CHECK(std::norm(u.m10) == doctest::Approx(want).epsilon(1e-11));
  }
}

TEST_CASE("same-generator composition") {
  const double hx = 0.021, hy = -0.013, hz = 0.007;
  const Mat2 a = su2_exp(hx, hy, hz, 12.5);
  const Mat2 b = su2_exp(hx, hy, hz, 30.0);
  const Mat2 c = su2_exp(hx, hy, hz, 42.5);
  CHECK(frobenius_dist(b * a, c) < 1e-13);
}

TEST_CASE("unitarity for random generators") {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const Mat2 u = su2_exp(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                           rng.uniform(-1.0, 1.0), rng.uniform(0.0, 100.0));
    CHECK(unitarity_error(u) < 1e-12);
  }
}

TEST_CASE("small-angle series branch stays first-order accurate") {
  const double t = 1e-16;
  const double hx = 0.8;
  const Mat2 u = su2_exp(hx, 0.0, 0.0, t);
  CHECK(std::abs(u.m01.imag() + t * hx) < 1e-24);
  CHECK(std::abs(u.m00.real() - 1.0) < 1e-16);
  CHECK(unitarity_error(u) < 1e-15);
}

TEST_CASE("pauli algebra") {
  const Mat2 x = pauli_x(), y = pauli_y(), z = pauli_z();
  CHECK(frobenius_dist(x * x, Mat2::identity()) < 1e-15);
  CHECK(frobenius_dist(y * y, Mat2::identity()) < 1e-15);
  CHECK(frobenius_dist(z * z, Mat2::identity()) < 1e-15);
  Mat2 iz = z;
  iz.m00 *= cplx(0, 1);
  iz.m11 *= cplx(0, 1);
  CHECK(frobenius_dist(x * y, iz) < 1e-15);
  CHECK(std::abs(x.trace()) < 1e-15);
}
