// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0
//
// Line-shape analysis built on the spectral machinery: Fejér envelope of
// the emission line, FWHM measurement, the δ-limit angular densities at
// a diffraction resonance, the quadrupole shift of the optimal polar
// angle, and the optimal impact parameter.

#pragma once

#include <functional>

#include "spvortex/packet.hpp"
#include "spvortex/radiation.hpp"
#include "spvortex/units.hpp"

namespace spv {

//=============================================================================
// Fejér kernel of the strip array
//=============================================================================

//! F_N(x) = sin²(Nx)/(N sin²x): the |F|²-envelope kernel in the
//! half-phase x = dΘ₁/2. F_N(kπ) = N; first zeros at x = kπ(1 ± 1/N);
//! one-period average 1 (integral π).
double fejer_kernel(double x, int N);

//! F_N as a function of ω at fixed observation angle.
double fejer_at(double omega, const Beam &beam, const Geometry &g,
                double theta);

//! Mathematical derivative dF_N/dω at fixed observation angle.
double fejer_derivative(double omega, const Beam &beam, const Geometry &g,
                        double theta);

//=============================================================================
// FWHM of an emission line
//=============================================================================

struct FwhmResult {
  double omega_peak = 0.0; //!< refined peak position [1/m]
  double value_peak = 0.0; //!< density at the peak
  double omega_lo = 0.0;   //!< lower half-maximum crossing [1/m]
  double omega_hi = 0.0;   //!< upper half-maximum crossing [1/m]
  double width() const { return omega_hi - omega_lo; }
};

//! Peak + half-maximum crossings of a continuous line shape on
//! [w_lo, w_hi]: grid scan, golden-section refinement of the peak,
//! then bisection for each half crossing. Throws numeric_error if the
//! half level is not bracketed inside the window.
FwhmResult fwhm_scan(const std::function<double(double)> &f, double w_lo,
                     double w_hi, int n_grid = 1025, double xtol_rel = 1e-12);

//! FWHM of the masked spectral density around diffraction order g at
//! observation (theta, phi); the scan window is ω_g(1 ± 2.5/N).
FwhmResult line_fwhm(const LGPacket &p, const Constants &c, const Geometry &g,
                     double theta, double phi, const TermMask &mask,
                     int order = 1);

//=============================================================================
// δ-limit angular densities at resonance
//=============================================================================

//! Dispersion factor λ₁(Θ) = 1/β − cosΘ (so ω_g = 2πg/(dλ₁)).
double dispersion_factor(const Beam &beam, double theta);

//! Geometry factor of the dynamically enhanced quadrupole term:
//! f₂ = 3πad·cot(aπ/d) + 3π²a² + 3π²ad(N−1) + d²(π²(2N²−3N+1)−3);
//! grows as 2π²d²N² for large N. Satisfies
//! f₂ = 6π²(−Re[F·F''*])/(N²u²) at the first resonance Θ₁ = 2π/d.
double f2_factor(const Geometry &g);

//! dW/dΩ of the charge term in the δ-line limit at order g.
double angular_ee(const Beam &beam, const Geometry &g, double theta,
                  double phi, int order = 1);

//! dW/dΩ of the charge-dipole interference in the δ-line limit.
double angular_emu(const Beam &beam, const Geometry &g, const Constants &c,
                   int ell, double theta, double phi, int order = 1);

//! dW/dΩ of the dynamically enhanced charge-quadrupole interference
//! (the F''-weighted part) in the δ-line limit:
//! angular_eQ2 = L/(3β⁴γ⁴) · f₂/(d·λ₁(Θ))² · angular_ee,
//! with L = ℓ²λ_c²/ρ̄₀² and λ₁ the dispersion factor.
double angular_eQ2(const LGPacket &p, const Constants &c, const Geometry &g,
                   double theta, double phi, int order = 1);

//! dW/dΩ of the F'-weighted charge-quadrupole interference in the
//! δ-line limit: N ω_g d/dω[(ω²/4π²)u²(Θ₁(ω)) Im w(ω)] at ω_g, where
//! w = j_e · j_Q1* (exact ω-derivative via dual numbers).
double angular_eQ1(const LGPacket &p, const Constants &c, const Geometry &g,
                   double theta, double phi, int order = 1);

//=============================================================================
// Quadrupole shift of the optimal polar angle
//=============================================================================

struct PolarShift {
  double theta_e = 0.0;         //!< charge-only optimal angle [rad]
  double delta_analytic = 0.0;  //!< first-order analytic shift [rad]
  double delta_numeric = 0.0;   //!< argmax(ee+eQ2) − argmax(ee) [rad]
  double theta_numeric = 0.0;   //!< numeric argmax of ee+eQ2 [rad]
};

//! Optimal charge-emission angle: cosΘ_e = 1/β − 4πh/(3βγd). Throws
//! regime_error if the geometry puts it outside (0, π).
double optimal_polar_angle(const Beam &beam, const Geometry &g);

//! Analytic first-order shift δΘ = −η_Q2·πd/(3hγ³β³ sinΘ_e),
//! η_Q2 = N²ℓ²λ_c²/ρ̄₀².
double polar_shift_analytic(const LGPacket &p, const Constants &c,
                            const Geometry &g);

//! Analytic and numeric shift of the optimal polar angle produced by
//! the dynamically enhanced quadrupole term, at azimuth Φ = π/2.
PolarShift polar_shift(const LGPacket &p, const Constants &c,
                       const Geometry &g);

//=============================================================================
// Optimal impact parameter
//=============================================================================

//! Height profile of the quadrupole visibility at fixed emitted
//! frequency: profile(h) = (ρ̄₀/|ℓ|)·d/(λ_c h_eff⁵)·h³ e^{−2h/h_eff}.
double impact_profile(const LGPacket &p, const Constants &c, double d,
                      double h, double heff);

//! argmax of the profile: h_opt = (3/2) h_eff.
double optimal_impact(double heff);

} // namespace spv
