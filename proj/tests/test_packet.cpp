// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0
//
// Laguerre-Gaussian packet: wavefunction normalization, spreading law,
// intrinsic moments and the geometric strip-count bound.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <spvortex/errors.hpp>
#include <spvortex/packet.hpp>
#include <spvortex/quadrature.hpp>
#include <spvortex/units.hpp>

#include "oracles.hpp"

using namespace spv;

namespace {

//! ∫|ψ|² ρ^pw dρ dz dφ over scaled variables u = ρ/ρ̄(t), v = (z−βt)/ρ̄(t).
//! The density is azimuthally symmetric, so the φ integral is 2π.
double radial_moment(const LGPacket &p, const Constants &c, double t, int pw,
                     double U, double V) {
  const double rb = rho_bar(p, c, t);
  auto dens = [&](double u, double v) {
    const Vec3 r{rb * u, 0.0, p.beam.beta * t + rb * v};
    return rb * rb * rb * std::norm(psi(p, c, r, t));
  };
  return 2.0 * kPi *
         integrate_adaptive(
             [&](double u) {
               return std::pow(u, pw) *
                      integrate_adaptive(
                          [&](double v) { return dens(u, v); }, -V, V, 1e-11);
             },
             0.0, U, 1e-10) *
         std::pow(rb, pw - 1);
}

} // namespace

TEST_SUITE("packet") {

TEST_CASE("wavefunction normalization is 1 while the packet spreads") {
  LGPacket p;
  p.beam.beta = 0.5;
  p.rho0 = 4e-8;
  p.ell = 7;
  Constants c;
  const double td = diffraction_time(p, c);
  for (double tfac : {0.0, 1.0, 2.0}) {
    const double norm = radial_moment(p, c, tfac * td, 1, 5.0, 6.0);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("normalization holds for a radially excited state (n = 1)") {
  LGPacket p;
  p.beam.beta = 0.4;
  p.rho0 = 6e-8;
  p.ell = 3;
  p.n = 1;
  Constants c;
  const double norm = radial_moment(p, c, 0.0, 1, 7.0, 7.0);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("mean squared radius matches the spreading law within 0.5%") {
  LGPacket p;
  p.beam.beta = 0.5;
  p.rho0 = 4e-8;
  p.ell = 7;
  Constants c;
  const double td = diffraction_time(p, c);
  for (double tfac : {0.0, 1.0, 2.0}) {
    const double t = tfac * td;
    const double norm = radial_moment(p, c, t, 1, 5.0, 6.0);
    const double r2 = radial_moment(p, c, t, 3, 5.0, 6.0);
    CHECK(r2 / norm == doctest::Approx(rho2_mean(p, c, t)).epsilon(5e-3));
  }
}

TEST_CASE("dispersive radius: rho_bar(t)^2 = rho0^2 + (ell*lambda_c/rho0)^2 t^2") {
  LGPacket p;
  p.beam.beta = 0.3;
  p.rho0 = 2e-7;
  p.ell = -40; // sign of ell must not matter for spreading
  Constants c;
  const double L = (double)p.ell * p.ell * c.lambda_c * c.lambda_c /
                   (p.rho0 * p.rho0);
  for (double t : {0.0, 1e-3, 0.04, 2.5}) {
    const double rb2 = rho_bar(p, c, t) * rho_bar(p, c, t);
    CHECK(rb2 ==
          doctest::Approx(p.rho0 * p.rho0 + L * t * t).epsilon(1e-13));
  }
  // The diffraction time doubles the squared radius.
  const double td = diffraction_time(p, c);
  CHECK(td == doctest::Approx(p.rho0 * p.rho0 /
                              (c.lambda_c * std::abs((double)p.ell))));
  CHECK(rho_bar(p, c, td) == doctest::Approx(p.rho0 * std::sqrt(2.0)));
  // Rayleigh length is the distance travelled in one diffraction time.
  CHECK(rayleigh_length(p, c) == doctest::Approx(p.beam.beta * td));
  // <rho^2> carries the 1 + 1/|ell| excess over rho_bar^2 (n = 0).
  CHECK(rho2_mean(p, c, td) ==
        doctest::Approx((1.0 + 1.0 / 40.0) * 2.0 * p.rho0 * p.rho0));
}

TEST_CASE("vortex phase winds ell times around the axis") {
  LGPacket p;
  p.beam.beta = 0.5;
  p.rho0 = 5e-8;
  p.ell = 5;
  Constants c;
  const double rho = 4e-8, t = 1e-4;
  // Evaluate near the moving packet center: far from z = beta*t the
  // longitudinal envelope underflows to exactly zero and the ratio is 0/0.
  const double z = p.beam.beta * t + 1e-8;
  const double dphi = kPi / 7.0;
  const std::complex<double> a =
      psi(p, c, {rho, 0.0, z}, t);
  const std::complex<double> b =
      psi(p, c, {rho * std::cos(dphi), rho * std::sin(dphi), z}, t);
  const std::complex<double> ratio = b / a;
  CHECK(std::abs(ratio) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::arg(ratio) == doctest::Approx(p.ell * dphi).epsilon(1e-10));
  // Conjugate winding for the opposite OAM sign; equal magnitude.
  LGPacket m = p;
  m.ell = -5;
  CHECK(std::abs(psi(m, c, {rho, 0.0, z}, t)) ==
        doctest::Approx(std::abs(a)).epsilon(1e-12));
}

TEST_CASE("intrinsic moments in closed form") {
  LGPacket p;
  p.beam.beta = 0.5;
  p.rho0 = 3e-7;
  p.ell = 1000;
  Constants c;
  c.lambda_c = 3.9e-13;
  const double corr = 0.5 * (double)p.ell * p.ell * c.lambda_c * c.lambda_c /
                      (p.rho0 * p.rho0);
  const Moments m0 = moments(p, c, 0.0);
  CHECK(m0.mu_z ==
        doctest::Approx(0.5 * p.ell * c.lambda_c * (1.0 - corr)));
  CHECK(m0.q_xx == doctest::Approx(0.5 * p.rho0 * p.rho0));
  CHECK(m0.q_zz == doctest::Approx(-p.rho0 * p.rho0));
  // The quadrupole follows the spreading radius; mu_z is conserved.
  const double t = 2.0 * diffraction_time(p, c);
  const Moments mt = moments(p, c, t);
  const double rb2 = rho_bar(p, c, t) * rho_bar(p, c, t);
  CHECK(mt.q_xx == doctest::Approx(0.5 * rb2));
  CHECK(mt.q_zz == doctest::Approx(-rb2));
  CHECK(mt.mu_z == doctest::Approx(m0.mu_z));
  // mu flips with the OAM sign.
  LGPacket n = p;
  n.ell = -1000;
  CHECK(moments(n, c, 0.0).mu_z == doctest::Approx(-m0.mu_z));
}

TEST_CASE("moment expansion breaks down when the correction reaches 1") {
  LGPacket p;
  p.beam.beta = 0.5;
  p.ell = 1000;
  Constants c;
  c.lambda_c = 3.9e-13;
  // corr = (ell*lambda_c)^2/(2 rho0^2) >= 1 for rho0 <= ell*lambda_c/sqrt(2).
  p.rho0 = 2.0e-10;
  CHECK_THROWS_AS(moments(p, c, 0.0), regime_error);
  p.rho0 = 3.0e-10; // slightly above the threshold 2.758e-10
  CHECK_NOTHROW(moments(p, c, 0.0));
}

TEST_CASE("zero OAM is rejected by the fixed-mean-radius parametrization") {
  LGPacket p;
  p.ell = 0;
  CHECK_THROWS_AS(p.validate(), parameter_error);
  p.ell = 1;
  p.rho0 = -1.0;
  CHECK_THROWS_AS(p.validate(), parameter_error);
  p.rho0 = 3e-7;
  p.n = -1;
  CHECK_THROWS_AS(p.validate(), parameter_error);
}

TEST_CASE("strip-count bound n_max and its monotonicity") {
  LGPacket p;
  p.beam.beta = 0.5;
  p.rho0 = 3e-7;
  p.ell = 1000;
  Constants c;
  c.lambda_c = 3.9e-13;
  Geometry g;
  g.d = 1e-3;
  g.a = 0.5e-3;
  g.h = 0.39e-3;
  const double expected = (p.beam.beta / std::abs((double)p.ell)) *
                          (p.rho0 / c.lambda_c) * (g.h / g.d) *
                          std::sqrt(1.0 - p.rho0 * p.rho0 / (g.h * g.h));
  CHECK(n_max(p, c, g) == (int)std::floor(expected));
  CHECK(n_max(p, c, g) == 149); // 149.99998... rounds down (conservative)
  // Monotone: larger h (well above rho0) allows more strips; larger
  // OAM (faster spreading) allows fewer.
  Geometry g2 = g;
  g2.h = 2.0 * g.h;
  CHECK(n_max(p, c, g2) > n_max(p, c, g));
  LGPacket p2 = p;
  p2.ell = 2000;
  CHECK(n_max(p2, c, g) < n_max(p, c, g));
  // The packet must fit under the grating at injection.
  LGPacket fat = p;
  fat.rho0 = 2.0 * g.h;
  CHECK(n_max(fat, c, g) == 0);
}

TEST_CASE("OAM ceiling from the emitted wavelength") {
  Constants c; // default lambda_c = 3.8616e-13 m
  CHECK(ell_max(2.0 * kPi / 1e-6, c) ==
        (int)std::floor(std::sqrt(1e-6 / c.lambda_c)));
  // ell_max_real grows as sqrt(lambda).
  const double r1 = ell_max_real(1e-6, c);
  const double r2 = ell_max_real(4e-6, c);
  CHECK(r2 == doctest::Approx(2.0 * r1).epsilon(1e-12));
}

} // TEST_SUITE
