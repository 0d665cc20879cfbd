// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0

#include "spvortex/radiation.hpp"

#include <cmath>

namespace spv {

const std::array<const char *, kNumTerms> kTermNames = {
    "ee",   "emu",  "eQ0",  "eQ1",  "eQ2",
    "mumu", "muQ0", "muQ1", "muQ2", "Q0Q0",
    "Q0Q1", "Q0Q2", "Q1Q1", "Q1Q2", "Q2Q2"};

TermMask TermMask::leading() {
  TermMask m;
  m.on[(int)STerm::ee] = true;
  m.on[(int)STerm::emu] = true;
  m.on[(int)STerm::eQ0] = true;
  m.on[(int)STerm::eQ1] = true;
  m.on[(int)STerm::eQ2] = true;
  return m;
}

TermMask TermMask::all() {
  TermMask m;
  m.on.fill(true);
  return m;
}

TermMask TermMask::charge() {
  TermMask m;
  m.on[(int)STerm::ee] = true;
  return m;
}

TermMask TermMask::single(STerm t) {
  TermMask m;
  m.on[(int)t] = true;
  return m;
}

FormFactor form_factor(double theta1, const Geometry &g) {
  g.validate();
  return form_factor_t(theta1, g);
}

SurfaceCurrent surface_current(const LGPacket &p, const Constants &c,
                               const Geometry &g, double theta, double phi,
                               double omega) {
  return surface_current_t(p, c, g, theta, phi, omega);
}

SpectralTerms spectral_terms(const LGPacket &p, const Constants &c,
                             const Geometry &g, double theta, double phi,
                             double omega) {
  if (!(omega > 0.0))
    throw parameter_error("spectral_terms: omega must be > 0");
  SpectralTerms out;
  out.term = spectral_terms_t(p, c, g, theta, phi, omega);
  return out;
}

double spectral_density(const LGPacket &p, const Constants &c,
                        const Geometry &g, double theta, double phi,
                        double omega, const TermMask &mask, bool per_strip) {
  const SpectralTerms t = spectral_terms(p, c, g, theta, phi, omega);
  double v = t.sum(mask);
  if (per_strip)
    v /= (double)g.N;
  return v;
}

double dW_ee_closed(const Beam &beam, const Geometry &g, double theta,
                    double phi, double omega) {
  beam.validate();
  g.validate();
  const double beta = beam.beta, gamma = beam.gamma();
  const double s = std::sin(theta), ct = std::cos(theta);
  const double cf = std::cos(phi), sf = std::sin(phi);
  const double lam = 1.0 + beta * beta * gamma * gamma * cf * cf * s * s;
  const double mu1 = omega / (beta * gamma) * std::sqrt(lam);
  const double num = ct * ct +
                     2.0 * beta * gamma * gamma * cf * cf * ct * s * s +
                     sf * sf * s * s +
                     beta * beta * ipow(gamma, 4) * cf * cf * ipow(s, 4);
  const FormFactor f = form_factor(theta1(beam.beta, theta, omega), g);
  const double F2 = f.F.re * f.F.re + f.F.im * f.F.im;
  return omega * omega / (4.0 * kPi * kPi) * std::exp(-2.0 * mu1 * g.h) *
         num / (beta * beta * gamma * gamma * lam) * F2;
}

double dW_emu_closed(const Beam &beam, const Geometry &g, const Constants &c,
                     int ell, double theta, double phi, double omega) {
  beam.validate();
  g.validate();
  c.validate();
  const double beta = beam.beta, gamma = beam.gamma();
  const double s = std::sin(theta), ct = std::cos(theta);
  const double cf = std::cos(phi);
  const double lam = 1.0 + beta * beta * gamma * gamma * cf * cf * s * s;
  const double mu1 = omega / (beta * gamma) * std::sqrt(lam);
  const FormFactor f = form_factor(theta1(beam.beta, theta, omega), g);
  const double F2 = f.F.re * f.F.re + f.F.im * f.F.im;
  return -(omega * omega / (4.0 * kPi * kPi)) *
         std::exp(-2.0 * mu1 * g.h) * (ell * c.lambda_c) * omega * s * cf *
         (beta * gamma * gamma * s * s + ct) /
         (beta * beta * gamma * gamma * std::sqrt(lam)) * F2;
}

} // namespace spv
