#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "nvmag/sequence.hpp"

using namespace nvmag;

TEST_CASE("pm waveform term sum and zero-phase start") {
  PmParams p;
  p.a = {0.05, 0.02};
  p.b = {0.08, 0.03};
  p.nu = {0.03, 0.07};
  const auto [x0, y0] = pm_waveform(p, 0.0);
  CHECK(x0 == doctest::Approx(0.07).epsilon(1e-15));
  CHECK(y0 == doctest::Approx(0.0).epsilon(1e-15));

  const double t = 13.7;
  double wx = 0.0, wy = 0.0;
  for (int j = 0; j < 2; ++j) {
    const double phase = p.b[j] / p.nu[j] * std::sin(p.nu[j] * t);
    wx += p.a[j] * std::cos(phase);
    wy += p.a[j] * std::sin(phase);
  }
  const auto [xt, yt] = pm_waveform(p, t);
  CHECK(xt == doctest::Approx(wx).epsilon(1e-15));
  CHECK(yt == doctest::Approx(wy).epsilon(1e-15));
}

TEST_CASE("single-term pm drive keeps constant magnitude") {
  PmParams p;  // defaults: one term
  for (double t : {0.0, 7.3, 44.4, 80.0, p.natural_duration()}) {
    const auto [x, y] = pm_waveform(p, t);
    CHECK(std::hypot(x, y) == doctest::Approx(p.a[0]).epsilon(1e-14));
  }
  CHECK(p.natural_duration() == doctest::Approx(pi / p.nu[0]).epsilon(1e-15));
  CHECK(p.amplitude_sum() == doctest::Approx(p.a[0]).epsilon(1e-15));
}

TEST_CASE("xy8 structure") {
  const Sequence seq = build_xy8(2, PulseKind::rect);
  CHECK(seq.n_pulses() == 16);
  CHECK(seq.pulses.size() == 16);
  CHECK(seq.total_time() == doctest::Approx(16.0 * default_period));
  CHECK(seq.ac_omega() == doctest::Approx(pi / default_period).epsilon(1e-15));
  CHECK(seq.t_pulse == doctest::Approx(default_t_pulse));
  CHECK(seq.rect_omega == doctest::Approx(pi / default_t_pulse).epsilon(1e-15));

  const double pat[8] = {0.0,      0.5 * pi, 0.0,      0.5 * pi,
                         0.5 * pi, 0.0,      0.5 * pi, 0.0};
  for (int k = 0; k < 16; ++k) {
    const auto& p = seq.pulses[static_cast<std::size_t>(k)];
    CHECK(p.start + 0.5 * p.duration ==
          doctest::Approx((k + 0.5) * default_period).epsilon(1e-12));
    CHECK(p.duration == doctest::Approx(default_t_pulse));
    CHECK(p.axis_phase == doctest::Approx(pat[k % 8]));
  }

  const Sequence pm_seq = build_xy8(1, PulseKind::pm);
  CHECK(pm_seq.t_pulse == doctest::Approx(PmParams{}.natural_duration()).epsilon(1e-15));

  CHECK_THROWS_AS(build_xy8(0, PulseKind::rect), std::invalid_argument);
  PmParams slow;
  slow.nu = {1e-4};  // pi/nu > period
  CHECK_THROWS_AS(build_xy8(1, PulseKind::pm, default_period, slow),
                  std::invalid_argument);
}

TEST_CASE("modulation function flips at the pulse centers") {
  const double P = default_period;
  const double om = pi / P;
  for (int k = 0; k < 6; ++k) {
    const double tc = (k + 0.5) * P;
    const double before = modulation_function(tc - 1e-9, om, 0.5 * pi);
    const double after = modulation_function(tc + 1e-9, om, 0.5 * pi);
    CHECK(before == -after);
    CHECK(std::abs(before) == 1.0);
  }
  CHECK(modulation_function(0.0, om, 0.5 * pi) == 1.0);
}

TEST_CASE("ideal population closed form") {
  CHECK(ideal_population(0.0, 128000.0) == doctest::Approx(1.0));
  const double g = 1.7e-5, T = 128000.0;
  CHECK(ideal_population(g, T) ==
        doctest::Approx(0.5 * (1.0 + std::cos(4.0 * g * T / pi))).epsilon(1e-15));
  // first zero of the fringe: 4 g T / pi = pi
  const double gz = pi * pi / (4.0 * T);
  CHECK(ideal_population(gz, T) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("propagate reproduces the closed form on constant segments") {
  // tracks carry Rabi rates; propagate halves them into sigma coefficients
  HamiltonianTrack track;
  track.segments.push_back({50.0, 0.011, 0.031, -0.007, 0.0, 0.0, 0.0});
  const Mat2 got = propagate(track, 100.0);  // single step
  const Mat2 want = su2_exp(0.5 * 0.031, 0.5 * (-0.007), 0.5 * 0.011, 50.0);
  CHECK(frobenius_dist(got, want) < 1e-13);

  // a pi pulse: constant Omega_x = pi / T over T
  HamiltonianTrack flip;
  flip.segments.push_back({50.0, 0.0, pi / 50.0, 0.0, 0.0, 0.0, 0.0});
  const Mat2 u = propagate(flip, 0.5);
  Mat2 mix = pauli_x();
  mix.m01 *= cplx(0, -1);
  mix.m10 *= cplx(0, -1);
  CHECK(frobenius_dist(u, mix) < 1e-12);
}

TEST_CASE("propagate integrates the ac term") {
  // pure sigma_z track: exact phase is delta/2 * L + g/om * [sin(om t + ph)]
  HamiltonianTrack track;
  Segment seg;
  seg.length = 137.0;
  seg.delta = 0.004;
  seg.g_ac = 0.0007;
  seg.om_ac = pi / 1000.0;
  seg.ac_phase = 0.35;
  track.segments.push_back(seg);
  const double theta =
      0.5 * seg.delta * seg.length +
      seg.g_ac / seg.om_ac *
          (std::sin(seg.om_ac * seg.length + seg.ac_phase) - std::sin(seg.ac_phase));
  const Mat2 want = su2_exp(0.0, 0.0, 1.0, theta);
  const Mat2 got = propagate(track, 0.01);
  CHECK(frobenius_dist(got, want) < 1e-9);
  CHECK(unitarity_error(got) < 1e-12);
}

TEST_CASE("propagate splits segments into equal midpoint steps") {
  HamiltonianTrack track;
  track.segments.push_back({10.0, 0.0, 0.05, 0.0, 0.0, 0.0, 0.0});
  // 10/3 forces a non-integer division; constant drive keeps it exact anyway
  const Mat2 a = propagate(track, 10.0 / 3.0);
  const Mat2 b = propagate(track, 10.0);
  CHECK(frobenius_dist(a, b) < 1e-13);
  CHECK_THROWS_AS(propagate(track, 0.0), std::invalid_argument);
}

TEST_CASE("pulse table samples the drive at step midpoints") {
  const PulseTable rect = pulse_table(PulseKind::rect, PmParams{}, pi / 50.0, 50.0, 0.5);
  CHECK(rect.steps == 100);
  CHECK(rect.dt == doctest::Approx(0.5));
  for (int s = 0; s < rect.steps; ++s) {
    CHECK(rect.hx[static_cast<std::size_t>(s)] ==
          doctest::Approx(0.5 * pi / 50.0).epsilon(1e-15));
    CHECK(rect.hy[static_cast<std::size_t>(s)] == 0.0);
  }

  PmParams p;
  const double T = p.natural_duration();
  const PulseTable pm = pulse_table(PulseKind::pm, p, 0.0, T, 0.1);
  CHECK(pm.steps == static_cast<int>(std::ceil(T / 0.1 - 1e-12)));
  for (int s = 0; s < pm.steps; s += 97) {
    const double tm = (s + 0.5) * pm.dt;
    const auto [ox, oy] = pm_waveform(p, tm);
    CHECK(pm.hx[static_cast<std::size_t>(s)] == doctest::Approx(0.5 * ox).epsilon(1e-14));
    CHECK(pm.hy[static_cast<std::size_t>(s)] == doctest::Approx(0.5 * oy).epsilon(1e-14));
  }
}
