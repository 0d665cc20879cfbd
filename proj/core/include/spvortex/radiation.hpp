// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0
//
// From Fourier fields to the radiated spectral-angular density.
//
// The grating is an ideally conducting strip array: N strips of width a
// at period d, strip j occupying z ∈ [jd, jd + a]. The induced surface
// current radiates; integrating a field part with z-polynomial
// coefficients (B0, B1, B2) along the strips gives the amplitude
//     A = B0·F − i·B1·F' − B2·F'',
// with F(Θ₁) = Σ_j ∫_strip e^{iΘ₁ z} dz the grating form factor and
// Θ₁ = ω(1/β − cos Θ). Everything is templated over double / Dual so
// exact ω-derivatives of any spectral quantity are available.

#pragma once

#include <array>
#include <cmath>
#include <string>

#include "spvortex/dual.hpp"
#include "spvortex/fourier.hpp"
#include "spvortex/packet.hpp"
#include "spvortex/units.hpp"
#include "spvortex/vec.hpp"

namespace spv {

//=============================================================================
// Grating form factor
//=============================================================================

//! F(Θ₁) and its first two Θ₁-derivatives.
template <class T> struct FormFactorT {
  Cx<T> F, Fp, Fpp;
};
using FormFactor = FormFactorT<double>;

//! Single-strip width function u(Θ₁) = 2 sin(aΘ₁/2)/Θ₁ (|F| for N = 1).
template <class T> T slit_u(T theta1, double a) {
  using std::sin;
  const T w = theta1 * T(0.5 * a);
  if (std::fabs(value_of(w)) < 1e-3) {
    const T w2 = w * w;
    return T(a) * (T(1.0) - w2 * T(1.0 / 6.0) + w2 * w2 * T(1.0 / 120.0));
  }
  return T(2.0) * sin(w) / theta1;
}

//! u(Θ₁), u'(Θ₁), u''(Θ₁) with a cancellation-free small-argument series.
template <class T> void slit_u_derivs(T theta1, double a, T &u, T &up, T &upp) {
  using std::cos;
  using std::sin;
  const T w = theta1 * T(0.5 * a);
  if (std::fabs(value_of(w)) < 1e-3) {
    const T w2 = w * w;
    u = T(a) * (T(1.0) - w2 * T(1.0 / 6.0) + w2 * w2 * T(1.0 / 120.0));
    up = T(0.5 * a * a) * (-w * T(1.0 / 3.0)) * (T(1.0) - w2 * T(0.1));
    upp = T(0.25 * a * a * a) * (T(-1.0 / 3.0) + w2 * T(0.1));
    return;
  }
  const T sw = sin(w), cw = cos(w);
  const T inv = T(1.0) / theta1;
  u = T(2.0) * sw * inv;
  up = T(a) * cw * inv - T(2.0) * sw * inv * inv;
  upp = T(-0.5 * a * a) * sw * inv - T(2.0 * a) * cw * inv * inv +
        T(4.0) * sw * inv * inv * inv;
}

//! Dirichlet ratio D(x) = sin(Nx)/sin(x) and two derivatives, with the
//! series branch near x = kπ where the exact forms cancel catastrophically.
template <class T>
void dirichlet_derivs(T x, int N, T &D, T &Dx, T &Dxx) {
  using std::cos;
  using std::sin;
  const double xv = value_of(x);
  const long long k = (long long)std::llround(xv / kPi);
  const T eps = x - T((double)k * kPi);
  if (N * std::fabs(value_of(eps)) < 3e-3) {
    const bool odd = (k % 2 != 0) && ((N + 1) % 2 != 0);
    const double s = odd ? -1.0 : 1.0;
    const double c2 = (double)N * N - 1.0;
    const double c4 = 3.0 * std::pow((double)N, 4) - 10.0 * N * N + 7.0;
    const T e2 = eps * eps;
    D = T(s * N) * (T(1.0) - e2 * T(c2 / 6.0) + e2 * e2 * T(c4 / 360.0));
    Dx = T(s * N) * (-eps * T(c2 / 3.0) + eps * e2 * T(c4 / 90.0));
    Dxx = T(s * N) * (T(-c2 / 3.0) + e2 * T(c4 / 30.0));
    return;
  }
  const T S = sin(T((double)N) * x), C = cos(T((double)N) * x);
  const T sx = sin(x), cx = cos(x);
  const T inv = T(1.0) / sx;
  D = S * inv;
  Dx = (T((double)N) * C * sx - S * cx) * inv * inv;
  Dxx = T(1.0 - (double)N * N) * S * inv -
        T(2.0 * N) * C * cx * inv * inv +
        T(2.0) * S * cx * cx * inv * inv * inv;
}

template <class T> FormFactorT<T> form_factor_t(T theta1, const Geometry &g) {
  using std::cos;
  using std::sin;
  const double a = g.a, d = g.d;
  const int N = g.N;
  const double c1 = 0.5 * (a + (double)(N - 1) * d);

  T u, up, upp;
  slit_u_derivs(theta1, a, u, up, upp);
  T D, Dx, Dxx;
  dirichlet_derivs(theta1 * T(0.5 * d), N, D, Dx, Dxx);

  const T chi = theta1 * T(c1);
  const Cx<T> phase(cos(chi), sin(chi));

  const T uD = u * D;
  const T d2 = T(0.5 * d);
  const T b1re = up * D + u * Dx * d2;          // (uD)'
  const T b2re = upp * D + T(2.0) * up * Dx * d2 + u * Dxx * d2 * d2; // (uD)''

  FormFactorT<T> f;
  f.F = Cx<T>(uD, T(0.0)) * phase;
  f.Fp = Cx<T>(b1re, T(c1) * uD) * phase;
  f.Fpp = Cx<T>(b2re - T(c1 * c1) * uD, T(2.0 * c1) * b1re) * phase;
  return f;
}

FormFactor form_factor(double theta1, const Geometry &g);

//=============================================================================
// Surface current and radiation amplitudes
//=============================================================================

//! Per-part reduced surface-current spectral densities, evaluated at
//! q_x = ω sinΘ cosΦ on the grating plane y = −h (current flows in-plane,
//! projected on the emission direction e₀).
template <class T> struct SurfaceCurrentT {
  Vec3C<T> e, mu, Q0, Q1, Q2;
};
using SurfaceCurrent = SurfaceCurrentT<double>;

template <class T>
Vec3C<T> project_current(const Vec3C<T> &E, double e0x, double e0y,
                         double e0z) {
  // j = (1/2π)(−E_x e₀_y, E_x e₀_x + E_z e₀_z, −E_z e₀_y)
  const double inv2pi = 1.0 / (2.0 * kPi);
  Vec3C<T> j;
  j.x = E.x * T(-e0y * inv2pi);
  j.y = E.x * T(e0x * inv2pi) + E.z * T(e0z * inv2pi);
  j.z = E.z * T(-e0y * inv2pi);
  return j;
}

template <class T>
SurfaceCurrentT<T> surface_current_t(const LGPacket &p, const Constants &c,
                                     const Geometry &g, double theta,
                                     double phi, T omega) {
  g.validate();
  using std::sin;
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sp = std::sin(phi), cp = std::cos(phi);
  const double e0x = st * cp, e0y = st * sp, e0z = ct;
  const T q = omega * T(st * cp);
  const FourierFieldT<T> f = fourier_field_t(q, -g.h, omega, p, c);
  SurfaceCurrentT<T> j;
  j.e = project_current(f.E_e, e0x, e0y, e0z);
  j.mu = project_current(f.E_mu, e0x, e0y, e0z);
  j.Q0 = project_current(f.E_Q0, e0x, e0y, e0z);
  j.Q1 = project_current(f.E_Q1, e0x, e0y, e0z);
  j.Q2 = project_current(f.E_Q2, e0x, e0y, e0z);
  return j;
}

SurfaceCurrent surface_current(const LGPacket &p, const Constants &c,
                               const Geometry &g, double theta, double phi,
                               double omega);

//! Strip-integrated radiation amplitudes per field part:
//! A_e/μ/Q0 = j·F,  A_Q1 = −i·j_Q1·F',  A_Q2 = −j_Q2·F''.
template <class T> struct AmplitudesT {
  Vec3C<T> e, mu, Q0, Q1, Q2;
};
using Amplitudes = AmplitudesT<double>;

template <class T>
AmplitudesT<T> amplitudes_t(const LGPacket &p, const Constants &c,
                            const Geometry &g, double theta, double phi,
                            T omega) {
  const SurfaceCurrentT<T> j = surface_current_t(p, c, g, theta, phi, omega);
  const T th1 = theta1(p.beam.beta, theta, omega);
  const FormFactorT<T> f = form_factor_t(th1, g);
  const Cx<T> mi(T(0.0), T(-1.0)); // −i
  AmplitudesT<T> A;
  A.e = j.e * f.F;
  A.mu = j.mu * f.F;
  A.Q0 = j.Q0 * f.F;
  A.Q1 = j.Q1 * (mi * f.Fp);
  A.Q2 = j.Q2 * (-f.Fpp);
  return A;
}

//=============================================================================
// Spectral-angular density, split into interference terms
//=============================================================================

//! The 15 quadratic combinations of the five amplitude parts.
enum class STerm : int {
  ee = 0,
  emu,
  eQ0,
  eQ1,
  eQ2,
  mumu,
  muQ0,
  muQ1,
  muQ2,
  Q0Q0,
  Q0Q1,
  Q0Q2,
  Q1Q1,
  Q1Q2,
  Q2Q2,
};
inline constexpr int kNumTerms = 15;
extern const std::array<const char *, kNumTerms> kTermNames;

//! Which interference terms to sum. The leading set keeps the charge
//! term and its interference with each correction (the corrections'
//! mutual products are one order higher).
struct TermMask {
  std::array<bool, kNumTerms> on{};

  static TermMask leading();  //!< ee, eμ, eQ0, eQ1, eQ2
  static TermMask all();      //!< all 15
  static TermMask charge();   //!< ee only
  static TermMask single(STerm t);
  bool operator[](STerm t) const { return on[(int)t]; }
};

//! All 15 interference terms of dW/(dω dΩ) at one observation point.
struct SpectralTerms {
  std::array<double, kNumTerms> term{};

  double sum(const TermMask &mask) const {
    double s = 0.0;
    for (int i = 0; i < kNumTerms; ++i)
      if (mask.on[i])
        s += term[i];
    return s;
  }
};

template <class T>
std::array<T, kNumTerms> spectral_terms_t(const LGPacket &p,
                                          const Constants &c,
                                          const Geometry &g, double theta,
                                          double phi, T omega) {
  const AmplitudesT<T> A = amplitudes_t(p, c, g, theta, phi, omega);
  const T pref = omega * omega * T(1.0 / (4.0 * kPi * kPi));
  const Vec3C<T> *parts[5] = {&A.e, &A.mu, &A.Q0, &A.Q1, &A.Q2};
  std::array<T, kNumTerms> out;
  int idx = 0;
  for (int i = 0; i < 5; ++i)
    for (int j = i; j < 5; ++j) {
      const int slot = idx++;
      if (i == j) {
        // Quadrupole self-terms (Q0Q0, Q1Q1, Q2Q2) enter with weight 2: the
        // conjugate-pair combination is counted for j=k as well, unlike the
        // plain squared moduli of the ee and μμ terms.
        const T weight = (i >= 2) ? T(2.0) : T(1.0);
        out[slot] = pref * weight * parts[i]->norm2();
      } else {
        out[slot] = pref * T(2.0) * parts[i]->dot_conj(*parts[j]).re;
      }
    }
  // Quadratic-pair enumeration order (i≤j) happens to match STerm order:
  // ee,emu,eQ0,eQ1,eQ2,mumu,muQ0,muQ1,muQ2,Q0Q0,Q0Q1,Q0Q2,Q1Q1,Q1Q2,Q2Q2.
  return out;
}

SpectralTerms spectral_terms(const LGPacket &p, const Constants &c,
                             const Geometry &g, double theta, double phi,
                             double omega);

//! Masked sum; per_strip divides by N (average contribution per strip).
double spectral_density(const LGPacket &p, const Constants &c,
                        const Geometry &g, double theta, double phi,
                        double omega, const TermMask &mask,
                        bool per_strip = false);

//=============================================================================
// Closed-form references (charge and charge–dipole terms)
//=============================================================================

//! Closed form of the ee term (machinery normalization):
//! (ω²/4π²) e^{−2μ₁h} [c² + 2βγ²c_φ²cs² + s_φ²s² + β²γ⁴c_φ²s⁴]
//!   / (β²γ²(1+β²γ²c_φ²s²)) · |F|².
double dW_ee_closed(const Beam &beam, const Geometry &g, double theta,
                    double phi, double omega);

//! Closed form of the eμ interference term (machinery normalization):
//! −(ω²/4π²) e^{−2μ₁h} ℓλ_c ω sinΘ cosΦ (βγ²s² + c)
//!   / (β²γ²√(1+β²γ²c_φ²s²)) · |F|².
double dW_emu_closed(const Beam &beam, const Geometry &g, const Constants &c,
                     int ell, double theta, double phi, double omega);

} // namespace spv
