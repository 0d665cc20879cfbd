// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0

#include "spvortex/packet.hpp"

#include <cmath>

namespace spv {

double diffraction_time(const LGPacket &p, const Constants &c) {
  p.validate();
  c.validate();
  return p.rho0 * p.rho0 / (c.lambda_c * std::abs(p.ell));
}

double rayleigh_length(const LGPacket &p, const Constants &c) {
  return p.beam.beta * diffraction_time(p, c);
}

double rho_bar(const LGPacket &p, const Constants &c, double t) {
  const double td = diffraction_time(p, c);
  const double u = t / td;
  return p.rho0 * std::sqrt(1.0 + u * u);
}

std::complex<double> psi(const LGPacket &p, const Constants &c, const Vec3 &r,
                         double t) {
  p.validate();
  c.validate();

  const int labs = std::abs(p.ell);
  const double rho = std::hypot(r.x, r.y);
  if (rho == 0.0 && labs > 0)
    return {0.0, 0.0}; // ρ^|ℓ| kills the amplitude on the axis

  const double phi_az = std::atan2(r.y, r.x);
  const double td = diffraction_time(p, c);
  const double rb = rho_bar(p, c, t);
  const double m = c.mass();
  const double pz = m * p.beam.beta; // ⟨p⟩ along z
  const double zeta = r.z - p.beam.beta * t;
  const double s2 = rho * rho + zeta * zeta;

  // Magnitude in log form: the ρ^|ℓ| |ℓ|^((2|ℓ|+3)/4) / ρ̄^(|ℓ|+3/2)
  // block overflows double for |ℓ| ≳ 100 if evaluated directly.
  double log_mag = 0.5 * (std::lgamma(p.n + 1.0) -
                          std::lgamma(p.n + labs + 1.0)) -
                   0.75 * std::log(kPi) + labs * std::log(rho) +
                   (2.0 * labs + 3.0) / 4.0 * std::log((double)labs) -
                   (labs + 1.5) * std::log(rb) -
                   labs * s2 / (2.0 * rb * rb);

  double sign = 1.0;
  if (p.n > 0) {
    const double lag =
        std::assoc_laguerre(p.n, labs, labs * rho * rho / (rb * rb));
    if (lag == 0.0)
      return {0.0, 0.0};
    sign = (lag < 0.0) ? -1.0 : 1.0;
    log_mag += std::log(std::fabs(lag));
  }

  // Phase: i^(2n+ℓ), plane-wave and kinetic phases, vortex phase, Gouy
  // phase with the 3/2 offset, and the imaginary part of the spreading
  // Gaussian exponent.
  const double phase = (2.0 * p.n + p.ell) * kPi / 2.0 -
                       t * pz * pz / (2.0 * m) + pz * r.z + p.ell * phi_az -
                       (2.0 * p.n + labs + 1.5) * std::atan(t / td) +
                       labs * t * s2 / (2.0 * td * rb * rb);

  const double mag = sign * std::exp(log_mag);
  return {mag * std::cos(phase), mag * std::sin(phase)};
}

Moments moments(const LGPacket &p, const Constants &c, double t) {
  p.validate();
  c.validate();
  if (p.n != 0)
    throw parameter_error("moments: closed forms require n = 0");

  const double lc = c.lambda_c;
  const double corr = 0.5 * (double)p.ell * p.ell * lc * lc /
                      (p.rho0 * p.rho0); // non-paraxial correction
  if (corr >= 1.0)
    throw regime_error("moments: non-paraxial correction >= 1, multipole "
                       "expansion invalid (rho0 too small for this ell)");

  const double rb2 = rho_bar(p, c, t) * rho_bar(p, c, t);
  Moments mres;
  mres.mu_z = 0.5 * p.ell * lc * (1.0 - corr); // ℓ/2m with correction
  mres.q_xx = 0.5 * rb2;
  mres.q_zz = -rb2;
  return mres;
}

double rho2_mean(const LGPacket &p, const Constants &c, double t) {
  const double rb = rho_bar(p, c, t);
  return (1.0 + 1.0 / std::abs(p.ell)) * rb * rb;
}

int n_max(const LGPacket &p, const Constants &c, const Geometry &g) {
  p.validate();
  c.validate();
  g.validate();
  if (!(g.h > p.rho0))
    return 0; // the packet already touches the grating at injection
  const double ratio = p.rho0 / g.h;
  const double val = p.beam.beta / std::abs(p.ell) * (p.rho0 / c.lambda_c) *
                     (g.h / g.d) * std::sqrt(1.0 - ratio * ratio);
  return (int)std::floor(val);
}

int ell_max(double omega, const Constants &c) {
  if (!(omega > 0.0))
    throw parameter_error("ell_max: omega must be > 0");
  c.validate();
  const double lambda = 2.0 * kPi / omega;
  return (int)std::floor(std::sqrt(lambda / c.lambda_c));
}

double ell_max_real(double lambda, const Constants &c) {
  if (!(lambda > 0.0))
    throw parameter_error("ell_max_real: lambda must be > 0");
  c.validate();
  return std::sqrt(lambda / c.lambda_c);
}

} // namespace spv
