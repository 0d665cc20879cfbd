// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0
//
// Laguerre-Gaussian electron packet: exact spreading wavefunction,
// diffraction time, intrinsic magnetic-dipole / electric-quadrupole
// moments, and the geometric limits they impose on a grating pass.

#pragma once

#include <complex>

#include "spvortex/units.hpp"

namespace spv {

//! Laguerre-Gaussian packet state in the fixed-mean-radius convention:
//! ρ̄₀ is the rms transverse radius, independent of ℓ; the underlying
//! waist is σ⊥ = ρ̄₀/√|ℓ|.
struct LGPacket {
  Beam beam;
  double rho0 = 3.0e-7; //!< initial rms transverse radius ρ̄₀ [m]
  int ell = 1;          //!< orbital angular momentum ℓ (signed, ≠ 0)
  int n = 0;            //!< radial quantum number (moments require n=0)

  void validate() const {
    beam.validate();
    if (!(rho0 > 0.0))
      throw parameter_error("LGPacket: rho0 must be > 0");
    if (ell == 0)
      throw parameter_error(
          "LGPacket: ell = 0 is outside the fixed-mean-radius "
          "parametrization (diffraction time undefined)");
    if (n < 0)
      throw parameter_error("LGPacket: radial index n must be >= 0");
  }
};

//! Intrinsic moments of the packet (n = 0).
struct Moments {
  double mu_z = 0.0;  //!< magnetic moment z-component, units of length
  double q_xx = 0.0;  //!< quadrupole Q_xx = Q_yy = ρ̄(t)²/2 [m²]
  double q_zz = 0.0;  //!< quadrupole Q_zz = −ρ̄(t)² [m²]
};

//! Diffraction (spreading) time t_d = mρ̄₀²/|ℓ| = ρ̄₀²/(λ_c|ℓ|) [m].
double diffraction_time(const LGPacket &p, const Constants &c);

//! Rayleigh length z_R = β·t_d [m].
double rayleigh_length(const LGPacket &p, const Constants &c);

//! Spreading law ρ̄(t) = ρ̄₀ √(1 + t²/t_d²).
double rho_bar(const LGPacket &p, const Constants &c, double t);

//! Wavefunction ψ_{ℓ,n}(r, t). Exact solution of the free Schrödinger
//! equation with OAM ℓ, radial index n, moving along z with ⟨p⟩ = mβ.
//! Evaluated in log-magnitude + phase form so that large |ℓ| (10³ and
//! beyond) stays inside double range.
std::complex<double> psi(const LGPacket &p, const Constants &c, const Vec3 &r,
                         double t);

//! Intrinsic moments at time t (n = 0 only): μ_z with its non-paraxial
//! correction, and the traceless quadrupole diag(1/2, 1/2, −1)·ρ̄(t)².
//! Throws regime_error when the correction term reaches unity.
Moments moments(const LGPacket &p, const Constants &c, double t);

//! Analytic ⟨ρ²⟩ at time t for n = 0: (1 + 1/|ℓ|)·ρ̄(t)².
double rho2_mean(const LGPacket &p, const Constants &c, double t);

//! Largest number of strips the packet can pass before its spread
//! reaches the grating plane:
//! N_max = floor[(β/|ℓ|)(ρ̄₀/λ_c)(h/d)√(1 − ρ̄₀²/h²)].
int n_max(const LGPacket &p, const Constants &c, const Geometry &g);

//! Upper OAM bound at radiated frequency ω: ℓ_max = floor(√(λ/λ_c)).
int ell_max(double omega, const Constants &c);

//! Real-valued version of the same bound, from the wavelength.
double ell_max_real(double lambda, const Constants &c);

} // namespace spv
