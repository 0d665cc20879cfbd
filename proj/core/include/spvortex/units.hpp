// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0
//
// Natural-unit conventions and Smith-Purcell kinematics.
//
// Unit system: ħ = c = |e| = 1. Every length and time is in meters;
// angular frequencies are stored as ω = 2π/λ in 1/m; the electron mass
// enters only through the reduced Compton wavelength λ_c via m = 1/λ_c.

#pragma once

#include <cmath>

#include "spvortex/errors.hpp"
#include "spvortex/vec.hpp"

namespace spv {

//! Speed of light in m/s — used only when converting internal 1/m
//! frequencies to SI angular frequencies for display.
inline constexpr double kSpeedOfLight = 299792458.0;

inline constexpr double kPi = 3.14159265358979323846;

//! Convert ω [1/m] to angular frequency in units of 10¹² rad/s.
inline double omega_to_thz(double omega_inv_m) {
  return omega_inv_m * kSpeedOfLight / 1.0e12;
}

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

//! Physical constants of the run (all overridable).
struct Constants {
  //! Reduced Compton wavelength of the electron [m].
  double lambda_c = 3.8616e-13;

  //! Electron mass in 1/m (ħ=c=1).
  double mass() const { return 1.0 / lambda_c; }

  void validate() const {
    if (!(lambda_c > 0.0))
      throw parameter_error("Constants: lambda_c must be > 0");
  }
};

//! Electron beam kinematics.
struct Beam {
  double beta = 0.5; //!< v/c, 0 < beta < 1

  double gamma() const {
    return 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
  }

  void validate() const {
    if (!(beta > 0.0) || !(beta < 1.0))
      throw parameter_error("Beam: beta must satisfy 0 < beta < 1");
  }
};

//! Grating geometry: N rectangular strips of width a and period d in the
//! (x,z) plane; the packet centroid travels along z at height h above it.
struct Geometry {
  double d = 1.0e-3; //!< period [m]
  double a = 0.5e-3; //!< strip width [m], 0 < a < d
  int N = 50;        //!< number of strips, ≥ 1
  double h = 1.0e-4; //!< impact parameter [m], > 0

  void validate() const {
    if (!(d > 0.0))
      throw parameter_error("Geometry: period d must be > 0");
    if (!(a > 0.0) || !(a < d))
      throw parameter_error("Geometry: strip width must satisfy 0 < a < d");
    if (N < 1)
      throw parameter_error("Geometry: strip count N must be >= 1");
    if (!(h > 0.0))
      throw parameter_error("Geometry: impact parameter h must be > 0");
  }
};

//! Observation direction and frequency of the emitted photon.
struct Observation {
  double theta = kPi / 2; //!< polar angle from the beam axis z [rad]
  double phi = kPi / 2;   //!< azimuth; π/2 is the vertical plane [rad]
  double omega = 0.0;     //!< photon frequency [1/m]

  //! Unit vector towards the observer.
  Vec3 e0() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
            std::cos(theta)};
  }
  //! Photon wave vector (on-shell, |k| = ω).
  Vec3 k() const { return e0() * omega; }

  void validate() const {
    if (!(theta >= 0.0) || !(theta <= kPi))
      throw parameter_error("Observation: theta must be in [0, pi]");
    if (!(omega > 0.0))
      throw parameter_error("Observation: omega must be > 0");
  }
};

//! Smith-Purcell dispersion relation: wavelength of diffraction order g
//! emitted at polar angle Θ: λ_g = (d/g)(1/β − cosΘ).
inline double sp_wavelength(double d, double beta, double theta, int g) {
  if (!(d > 0.0))
    throw parameter_error("sp_wavelength: d must be > 0");
  if (g < 1)
    throw parameter_error("sp_wavelength: order g must be >= 1");
  if (!(beta > 0.0) || !(beta < 1.0))
    throw parameter_error("sp_wavelength: beta must satisfy 0 < beta < 1");
  return (d / g) * (1.0 / beta - std::cos(theta));
}

//! Resonance frequency ω_g = 2π/λ_g [1/m].
inline double sp_omega(double d, double beta, double theta, int g) {
  return 2.0 * kPi / sp_wavelength(d, beta, theta, g);
}

//! Longitudinal phase mismatch per unit length: Θ₁ = ω/β − k_z
//! = ω(1/β − cosΘ). At the resonance of order g, Θ₁ = 2πg/d.
//! Templated so dΘ₁/dω propagates through dual-number evaluations.
template <class T> inline T theta1(double beta, double theta, T omega) {
  return omega * T(1.0 / beta - std::cos(theta));
}

//! Effective impact parameter h_eff = βγλ/2π = βγ/ω: the decay scale of
//! the evanescent incident field above the grating.
inline double h_eff(const Beam &beam, double omega) {
  if (!(omega > 0.0))
    throw parameter_error("h_eff: omega must be > 0");
  beam.validate();
  return beam.beta * beam.gamma() / omega;
}

} // namespace spv
