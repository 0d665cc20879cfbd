// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0

#include "spvortex/analysis.hpp"

#include <cmath>

#include "spvortex/errors.hpp"
#include "spvortex/quadrature.hpp"

namespace spv {

//=============================================================================
// Fejér kernel
//=============================================================================

double fejer_kernel(double x, int N) {
  if (N < 1)
    throw parameter_error("fejer_kernel: N must be >= 1");
  double D, Dx, Dxx;
  dirichlet_derivs(x, N, D, Dx, Dxx);
  return D * D / (double)N;
}

double fejer_at(double omega, const Beam &beam, const Geometry &g,
                double theta) {
  beam.validate();
  g.validate();
  return fejer_kernel(0.5 * g.d * theta1(beam.beta, theta, omega), g.N);
}

double fejer_derivative(double omega, const Beam &beam, const Geometry &g,
                        double theta) {
  beam.validate();
  g.validate();
  const double dxdw = 0.5 * g.d * (1.0 / beam.beta - std::cos(theta));
  double D, Dx, Dxx;
  dirichlet_derivs(dxdw * omega, g.N, D, Dx, Dxx);
  return 2.0 * D * Dx / (double)g.N * dxdw;
}

//=============================================================================
// FWHM
//=============================================================================

FwhmResult fwhm_scan(const std::function<double(double)> &f, double w_lo,
                     double w_hi, int n_grid, double xtol_rel) {
  if (!(w_hi > w_lo) || n_grid < 9)
    throw parameter_error("fwhm_scan: need w_hi > w_lo and n_grid >= 9");
  std::vector<double> ws(n_grid), vs(n_grid);
  const double dw = (w_hi - w_lo) / (n_grid - 1);
  int imax = 0;
  for (int i = 0; i < n_grid; ++i) {
    ws[i] = w_lo + i * dw;
    vs[i] = f(ws[i]);
    if (vs[i] > vs[imax])
      imax = i;
  }
  if (imax == 0 || imax == n_grid - 1)
    throw numeric_error("fwhm_scan: peak lies on the window boundary");

  FwhmResult r;
  r.omega_peak =
      golden_section_max(f, ws[imax - 1], ws[imax + 1], xtol_rel * ws[imax]);
  r.value_peak = f(r.omega_peak);
  const double half = 0.5 * r.value_peak;

  // Walk outward from the peak to bracket each half-maximum crossing.
  const auto cross = [&](int dir) {
    int i = imax;
    while (i + dir >= 0 && i + dir < n_grid && f(ws[i + dir]) >= half)
      i += dir;
    if (i + dir < 0 || i + dir >= n_grid)
      throw numeric_error("fwhm_scan: half level not reached inside window");
    const double a = std::min(ws[i], ws[i + dir]);
    const double b = std::max(ws[i], ws[i + dir]);
    return bisect_root([&](double w) { return f(w) - half; }, a, b, xtol_rel);
  };
  r.omega_lo = cross(-1);
  r.omega_hi = cross(+1);
  return r;
}

FwhmResult line_fwhm(const LGPacket &p, const Constants &c, const Geometry &g,
                     double theta, double phi, const TermMask &mask,
                     int order) {
  p.validate();
  c.validate();
  g.validate();
  const double w1 = sp_omega(g.d, p.beam.beta, theta, order);
  const double half_window = 2.5 / (double)g.N;
  const double w_lo = w1 * std::max(1.0 - half_window, 0.05);
  const double w_hi = w1 * (1.0 + half_window);
  const auto f = [&](double w) {
    return spectral_density(p, c, g, theta, phi, w, mask);
  };
  return fwhm_scan(f, w_lo, w_hi);
}

//=============================================================================
// δ-limit angular densities
//=============================================================================

double dispersion_factor(const Beam &beam, double theta) {
  beam.validate();
  return 1.0 / beam.beta - std::cos(theta);
}

double f2_factor(const Geometry &g) {
  g.validate();
  const double a = g.a, d = g.d;
  const double N = (double)g.N;
  const double pi2 = kPi * kPi;
  const double cot = std::cos(kPi * a / d) / std::sin(kPi * a / d);
  return 3.0 * kPi * a * d * cot + 3.0 * pi2 * a * a +
         3.0 * pi2 * a * d * (N - 1.0) +
         d * d * (pi2 * (2.0 * N * N - 3.0 * N + 1.0) - 3.0);
}

double angular_ee(const Beam &beam, const Geometry &g, double theta,
                  double phi, int order) {
  if (order < 1)
    throw parameter_error("angular_ee: order must be >= 1");
  // δ-line weight of the Fejér kernel: ∫ N·F_N dω over one period equals
  // N·ω_g/g, turning the closed spectral density at resonance (which
  // carries |F|² = N²u²) into dW/dΩ = dW(ω_g)·ω_g/(N g).
  const double w1 = sp_omega(g.d, beam.beta, theta, order);
  return dW_ee_closed(beam, g, theta, phi, w1) * w1 / ((double)g.N * order);
}

double angular_emu(const Beam &beam, const Geometry &g, const Constants &c,
                   int ell, double theta, double phi, int order) {
  if (order < 1)
    throw parameter_error("angular_emu: order must be >= 1");
  const double w1 = sp_omega(g.d, beam.beta, theta, order);
  return dW_emu_closed(beam, g, c, ell, theta, phi, w1) * w1 /
         ((double)g.N * order);
}

double angular_eQ2(const LGPacket &p, const Constants &c, const Geometry &g,
                   double theta, double phi, int order) {
  p.validate();
  c.validate();
  const double beta = p.beam.beta, gamma = p.beam.gamma();
  const double L = (double)p.ell * p.ell * c.lambda_c * c.lambda_c /
                   (p.rho0 * p.rho0);
  const double lam1 = dispersion_factor(p.beam, theta);
  const double ratio = L / (3.0 * ipow(beta, 4) * ipow(gamma, 4)) *
                       f2_factor(g) / (g.d * g.d * lam1 * lam1);
  return ratio * angular_ee(p.beam, g, theta, phi, order);
}

double angular_eQ1(const LGPacket &p, const Constants &c, const Geometry &g,
                   double theta, double phi, int order) {
  p.validate();
  c.validate();
  g.validate();
  if (order < 1)
    throw parameter_error("angular_eQ1: order must be >= 1");
  const double w1 = sp_omega(g.d, p.beam.beta, theta, order);
  // The F'-weighted line integral reduces to the exact ω-derivative of
  // the slowly varying envelope (ω²/4π²)·u²·Im(j_e·j_Q1*) at resonance.
  const Dual wD(w1, 1.0);
  const SurfaceCurrentT<Dual> j =
      surface_current_t(p, c, g, theta, phi, wD);
  const Cx<Dual> w = j.e.dot_conj(j.Q1);
  const Dual u = slit_u(theta1(p.beam.beta, theta, wD), g.a);
  const Dual env = wD * wD * Dual(1.0 / (4.0 * kPi * kPi)) * u * u * w.im;
  return (double)g.N * w1 * env.d;
}

//=============================================================================
// Polar shift
//=============================================================================

double optimal_polar_angle(const Beam &beam, const Geometry &g) {
  beam.validate();
  g.validate();
  const double ce =
      1.0 / beam.beta - 4.0 * kPi * g.h / (3.0 * beam.beta * beam.gamma() * g.d);
  if (!(ce > -1.0) || !(ce < 1.0))
    throw regime_error("optimal_polar_angle: optimum lies outside (0, pi); "
                       "adjust h/d or beta");
  return std::acos(ce);
}

double polar_shift_analytic(const LGPacket &p, const Constants &c,
                            const Geometry &g) {
  p.validate();
  c.validate();
  const double beta = p.beam.beta, gamma = p.beam.gamma();
  const double L = (double)p.ell * p.ell * c.lambda_c * c.lambda_c /
                   (p.rho0 * p.rho0);
  const double eta_q2 = (double)g.N * g.N * L;
  const double theta_e = optimal_polar_angle(p.beam, g);
  return -eta_q2 * kPi * g.d /
         (3.0 * g.h * ipow(gamma, 3) * ipow(beta, 3) * std::sin(theta_e));
}

PolarShift polar_shift(const LGPacket &p, const Constants &c,
                       const Geometry &g) {
  PolarShift r;
  r.theta_e = optimal_polar_angle(p.beam, g);
  r.delta_analytic = polar_shift_analytic(p, c, g);

  const double lo = deg_to_rad(5.0), hi = deg_to_rad(175.0);
  const double phi = kPi / 2.0;
  const auto f_ee = [&](double th) { return angular_ee(p.beam, g, th, phi); };
  const auto f_corr = [&](double th) {
    return angular_ee(p.beam, g, th, phi) + angular_eQ2(p, c, g, th, phi);
  };
  const double peak_ee = golden_section_max(f_ee, lo, hi, 1e-7);
  r.theta_numeric = golden_section_max(f_corr, lo, hi, 1e-7);
  r.delta_numeric = r.theta_numeric - peak_ee;
  return r;
}

//=============================================================================
// Optimal impact parameter
//=============================================================================

double impact_profile(const LGPacket &p, const Constants &c, double d,
                      double h, double heff) {
  p.validate();
  c.validate();
  if (!(h > 0.0) || !(heff > 0.0) || !(d > 0.0))
    throw parameter_error("impact_profile: d, h and heff must be > 0");
  return p.rho0 / std::abs((double)p.ell) * d /
         (c.lambda_c * ipow(heff, 5)) * h * h * h * std::exp(-2.0 * h / heff);
}

double optimal_impact(double heff) {
  if (!(heff > 0.0))
    throw parameter_error("optimal_impact: heff must be > 0");
  return 1.5 * heff;
}

} // namespace spv
