// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0
//
// Line-shape analysis: FWHM scanner on synthetic profiles and on the
// real charge line, Fejér envelope facts, δ-limit angular densities and
// their N-scaling, the polar-angle shift, and the optimal impact
// parameter.

#include <doctest.h>

#include <cmath>
#include <spvortex/analysis.hpp>
#include <spvortex/quadrature.hpp>
#include <spvortex/regime.hpp>
#include <spvortex/units.hpp>

#include "oracles.hpp"

using namespace spv;
using spvtest::ls_slope;

namespace {

//! Half-power half-width of sin²(Nx)/(N sin² x) in x is 1.39156/N.
constexpr double kFejerHalfPower = 2.78312;

LGPacket table_packet() {
  LGPacket p;
  p.beam.beta = 0.5;
  p.rho0 = 3e-7;
  p.ell = 1000;
  return p;
}

Geometry table_grating() {
  Geometry g;
  g.d = 1e-3;
  g.a = 0.5e-3;
  g.N = 50;
  g.h = 0.39e-3;
  return g;
}

} // namespace

TEST_SUITE("analysis") {

TEST_CASE("fwhm scanner is exact on synthetic profiles") {
  const double w0 = 7.0, sigma = 0.35;
  auto gauss = [&](double w) {
    return 3.0 * std::exp(-0.5 * std::pow((w - w0) / sigma, 2));
  };
  const FwhmResult rg = fwhm_scan(gauss, w0 - 6 * sigma, w0 + 6 * sigma);
  CHECK(rg.omega_peak == doctest::Approx(w0).epsilon(1e-9));
  CHECK(rg.value_peak == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(rg.width() ==
        doctest::Approx(2.0 * sigma * std::sqrt(2.0 * std::log(2.0)))
            .epsilon(1e-9));
  const double gl = 0.12;
  auto lorentz = [&](double w) {
    return 1.0 / (1.0 + std::pow((w - w0) / gl, 2));
  };
  const FwhmResult rl = fwhm_scan(lorentz, w0 - 8 * gl, w0 + 8 * gl);
  CHECK(rl.width() == doctest::Approx(2.0 * gl).epsilon(1e-9));
  CHECK(rl.omega_lo == doctest::Approx(w0 - gl).epsilon(1e-9));
  CHECK(rl.omega_hi == doctest::Approx(w0 + gl).epsilon(1e-9));
  // A profile peaking at the window edge has no upper half crossing.
  CHECK_THROWS_AS(fwhm_scan([](double w) { return w; }, 0.0, 1.0),
                  numeric_error);
}

TEST_CASE("fejer envelope: peak value, zeros, flat top, period integral") {
  Geometry g;
  g.d = 1e-3;
  g.a = 0.5e-3;
  g.N = 37;
  g.h = 1e-4;
  Beam beam;
  beam.beta = 0.5;
  const double theta = 1.1;
  const double w1 = sp_omega(g.d, beam.beta, theta, 1);
  CHECK(fejer_kernel(kPi, g.N) == doctest::Approx((double)g.N).epsilon(1e-9));
  CHECK(fejer_kernel(2.0 * kPi, g.N) ==
        doctest::Approx((double)g.N).epsilon(1e-9));
  CHECK(fejer_at(w1, beam, g, theta) ==
        doctest::Approx((double)g.N).epsilon(1e-9));
  const double z_lo = fejer_at(w1 * (1.0 - 1.0 / g.N), beam, g, theta);
  const double z_hi = fejer_at(w1 * (1.0 + 1.0 / g.N), beam, g, theta);
  CHECK(std::abs(z_lo) <= 1e-12 * g.N);
  CHECK(std::abs(z_hi) <= 1e-12 * g.N);
  CHECK(std::abs(fejer_derivative(w1, beam, g, theta)) <=
        1e-9 * g.N * g.N * g.d);
  // One full period integrates to 2π/(dλ₁), independent of N.
  const double lam1 = dispersion_factor(beam, theta);
  const double integral = spvtest::integrate_panels(
      [&](double w) { return fejer_at(w, beam, g, theta); }, 0.5 * w1,
      1.5 * w1, w1 / (20.0 * g.N), 1e-7);
  CHECK(integral ==
        doctest::Approx(2.0 * kPi / (g.d * lam1)).epsilon(1e-9));
  CHECK(dispersion_factor(beam, theta) ==
        doctest::Approx(1.0 / beam.beta - std::cos(theta)).epsilon(1e-15));
}

TEST_CASE("charge line: Fejér width and centering across the parameter grid") {
  Constants c;
  c.lambda_c = 3.9e-13;
  LGPacket p = table_packet();
  Geometry g;
  g.d = 1e-3;
  g.a = 5e-4;
  g.N = 50;
  for (double beta : {0.3, 0.5, 0.8})
    for (double theta_deg : {60.0, 90.0, 120.0}) {
      p.beam.beta = beta;
      const double theta = deg_to_rad(theta_deg);
      const double w1 = sp_omega(g.d, beta, theta, 1);
      g.h = 0.5 * h_eff(p.beam, w1);
      const FwhmResult r =
          line_fwhm(p, c, g, theta, kPi / 2, TermMask::charge());
      const double lam1 = dispersion_factor(p.beam, theta);
      const double fejer_width =
          2.0 * kFejerHalfPower / (g.N * g.d * lam1);
      CHECK(r.width() == doctest::Approx(fejer_width).epsilon(0.01));
      CHECK(std::abs(r.omega_peak - w1) <= 0.02 * r.width());
    }
}

TEST_CASE("f2 factor: closed form equals the form-factor combination") {
  for (double d : {1e-3, 7e-4})
    for (double afrac : {0.5, 1.0 / 3.0})
      for (int N : {10, 50, 200}) {
        Geometry g;
        g.d = d;
        g.a = afrac * d;
        g.N = N;
        g.h = 1e-4;
        const double th1 = 2.0 * kPi / d;
        const spvtest::BruteFormFactor b = spvtest::brute_form_factor(th1, g);
        const double u = slit_u(th1, g.a);
        const double combo = 6.0 * kPi * kPi *
                             (-(b.F * std::conj(b.Fpp)).real()) /
                             ((double)N * N * u * u);
        CHECK(f2_factor(g) == doctest::Approx(combo).epsilon(1e-10));
      }
  // Large-N growth: f2 -> 2π²d²N².
  Geometry g;
  g.d = 1e-3;
  g.a = 5e-4;
  g.h = 1e-4;
  g.N = 400;
  CHECK(f2_factor(g) / (400.0 * 400.0) ==
        doctest::Approx(2.0 * kPi * kPi * g.d * g.d).epsilon(0.02));
  g.N = 800;
  CHECK(f2_factor(g) > 3.9 * f2_factor([&] {
          Geometry h = g;
          h.N = 400;
          return h;
        }()));
}

TEST_CASE("delta-limit angular densities: dispersion scaling of the "
          "enhanced quadrupole") {
  const LGPacket p = table_packet();
  Constants c;
  c.lambda_c = 3.9e-13;
  Geometry g;
  g.d = 1e-4;
  g.a = 5e-5;
  g.N = 300;
  g.h = 2e-5;
  auto ratio = [&](double theta) {
    return angular_eQ2(p, c, g, theta, kPi / 2) /
           angular_ee(p.beam, g, theta, kPi / 2);
  };
  // λ₁(Θ→0) = 1/β − 1 = 1 at β = 1/2 and λ₁(π/2) = 2: the enhanced
  // term scales as 1/λ₁², so the ratio of ratios is exactly 4.
  CHECK(ratio(1e-3) / ratio(kPi / 2) == doctest::Approx(4.0).epsilon(1e-4));
}

TEST_CASE("delta-limit angular densities scale as N and N^3") {
  LGPacket p = table_packet();
  p.ell = 150;
  Constants c;
  c.lambda_c = 3.9e-13;
  Geometry g;
  g.d = 1e-4;
  g.a = 0.5e-4;
  g.h = 2.7e-5;
  std::vector<double> ln, lee, leq2;
  for (int N : {100, 180, 320, 560, 700}) {
    g.N = N;
    ln.push_back(std::log((double)N));
    lee.push_back(std::log(angular_ee(p.beam, g, kPi / 2, kPi / 2)));
    leq2.push_back(std::log(angular_eQ2(p, c, g, kPi / 2, kPi / 2)));
  }
  CHECK(ls_slope(ln, lee) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(ls_slope(ln, leq2) == doctest::Approx(3.0).epsilon(0.04));
}

TEST_CASE("delta-limit corrections sit inside their smallness bands") {
  const LGPacket p = table_packet();
  Constants c;
  c.lambda_c = 3.9e-13;
  Geometry g = table_grating();
  g.h = 0.39e-3;
  const double theta = kPi / 2, phi = kPi / 2;
  const EtaLedger etas = compute_etas(p, c, g, theta);
  const double ee = angular_ee(p.beam, g, theta, phi);
  const double r1 = std::abs(angular_eQ1(p, c, g, theta, phi)) / ee;
  const double r2 = std::abs(angular_eQ2(p, c, g, theta, phi)) / ee;
  CHECK(r1 >= 1.0 * etas.eta_Q1);
  CHECK(r1 <= 10.0 * etas.eta_Q1);
  CHECK(r2 >= 3.0 * etas.eta_Q2);
  CHECK(r2 <= 30.0 * etas.eta_Q2);
  // The dipole interference vanishes in the vertical plane and is odd
  // in the OAM sign.
  const double m0 = angular_emu(p.beam, g, c, p.ell, theta, kPi / 2);
  const double m4 = angular_emu(p.beam, g, c, p.ell, theta, kPi / 4);
  CHECK(std::abs(m0) <= 1e-14 * std::abs(m4));
  CHECK(angular_emu(p.beam, g, c, -p.ell, theta, kPi / 4) ==
        doctest::Approx(-m4).epsilon(1e-13));
}

TEST_CASE("F'-weighted interference integrates to near cancellation") {
  // Across the line the eQ1 term is nearly antisymmetric: its signed
  // integral is ~7/N of its absolute integral, vanishing as the line
  // narrows. This pins both the sign structure and the 1/N scaling.
  const LGPacket p = table_packet();
  Constants c;
  c.lambda_c = 3.9e-13;
  Geometry g = table_grating();
  for (int N : {50, 150}) {
    g.N = N;
    const double w1 = sp_omega(g.d, p.beam.beta, kPi / 2, 1);
    const double lo = w1 * (1.0 - 2.5 / N), hi = w1 * (1.0 + 2.5 / N);
    const int n = 2000;
    double signedsum = 0.0, abssum = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double w = lo + (hi - lo) * i / n;
      const double t =
          spectral_terms(p, c, g, kPi / 2, kPi / 2, w).term[(int)STerm::eQ1];
      const double wgt = (i == 0 || i == n) ? 0.5 : 1.0;
      signedsum += wgt * t;
      abssum += wgt * std::abs(t);
    }
    const double ratio = std::abs(signedsum) / abssum;
    CHECK(N * ratio >= 5.0);
    CHECK(N * ratio <= 10.0);
  }
}

TEST_CASE("polar shift: geometry placing the optimum at the zenith") {
  Beam beam;
  beam.beta = 0.7;
  Geometry g;
  g.d = 1e-4;
  g.a = 5e-5;
  g.N = 400;
  g.h = 3.0 * beam.gamma() * g.d / (4.0 * kPi);
  CHECK(optimal_polar_angle(beam, g) ==
        doctest::Approx(kPi / 2).epsilon(1e-12));
  // Too-large impact parameter pushes cosΘ_e out of range.
  Geometry bad = g;
  bad.h = 1e-4;
  CHECK_THROWS_AS(optimal_polar_angle(beam, bad), regime_error);
  // A packet with a negligible quadrupole produces no measurable shift.
  LGPacket p;
  p.beam = beam;
  p.rho0 = 3e-6;
  p.ell = 1;
  Constants c;
  c.lambda_c = 3.9e-13;
  const PolarShift ps = polar_shift(p, c, g);
  CHECK(ps.theta_e == doctest::Approx(kPi / 2).epsilon(1e-12));
  CHECK(std::abs(ps.delta_numeric) <= 1e-4);
  CHECK(std::abs(ps.delta_analytic) <= 1e-6);
  CHECK(ps.theta_numeric ==
        doctest::Approx(ps.theta_e + ps.delta_numeric).epsilon(1e-12));
}

TEST_CASE("optimal impact parameter maximizes the quadrupole visibility") {
  LGPacket p = table_packet();
  Constants c;
  c.lambda_c = 3.9e-13;
  const double d = 5e-4, heff = 1.3e-4;
  CHECK(optimal_impact(heff) == doctest::Approx(1.5 * heff).epsilon(1e-15));
  const double hstar = golden_section_max(
      [&](double h) { return impact_profile(p, c, d, h, heff); },
      0.1 * heff, 5.0 * heff, 1e-10 * heff);
  CHECK(hstar == doctest::Approx(1.5 * heff).epsilon(1e-6));
  // Linear in the waist, and the 3:1.5 height ratio gives exactly 8e^-3.
  LGPacket p2 = p;
  p2.rho0 = 2.0 * p.rho0;
  CHECK(impact_profile(p2, c, d, heff, heff) ==
        doctest::Approx(2.0 * impact_profile(p, c, d, heff, heff))
            .epsilon(1e-12));
  CHECK(impact_profile(p, c, d, 3.0 * heff, heff) /
            impact_profile(p, c, d, 1.5 * heff, heff) ==
        doctest::Approx(8.0 * std::exp(-3.0)).epsilon(1e-10));
}

} // TEST_SUITE
