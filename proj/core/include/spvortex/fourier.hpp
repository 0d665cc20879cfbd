// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0
//
// Planar (x,t) Fourier transform of the lab-frame fields.
//
// Every field component is a finite sum of monomials
//     c · x^p · z^j · R_z^n / R^ν,         ν ∈ {3,5,7},
// whose transform ∫dx dt e^{i(ωt − q_x x)} reduces exactly to
//     z^j · γ^n · e^{iωz/β} · (i∂_{q_x})^p (iβ∂_ω)^n Î_ν ,
// where Î_ν is the closed master integral. The family
//     C · (2π)^a β^b γ^c P^dP L^dL · q_x^pq ω^pw μ^pm |y|^py sgn(y)^ps
//       · e^{−μ|y|},        μ = √(ω²/(γ²β²) + q_x²),
// is closed under ∂_ω and ∂_{q_x}, so the whole calculation is done
// once, symbolically, with exact Gaussian-rational coefficients; the
// resulting tables are evaluated numerically afterwards.
//
// P = ρ̄₀² and L = ℓ²λ_c²/ρ̄₀² stay symbolic: one table serves every
// packet. All Fourier fields here are "reduced": the plane-wave factor
// e^{iωz/β} and the z-polynomial are reassembled by the caller.

#pragma once

#include <string>
#include <vector>

#include "spvortex/dual.hpp"
#include "spvortex/packet.hpp"
#include "spvortex/units.hpp"
#include "spvortex/vec.hpp"

namespace spv {

//=============================================================================
// Exact coefficient arithmetic
//=============================================================================

//! Exact rational with gcd normalization (sign kept in the numerator).
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long n) : num(n), den(1) {}
  Rat(long long n, long long d);

  Rat operator+(const Rat &o) const;
  Rat operator*(const Rat &o) const;
  bool is_zero() const { return num == 0; }
  double value() const { return (double)num / (double)den; }
};

//! Gaussian rational a + i·b.
struct GaussRat {
  Rat re, im;

  GaussRat() = default;
  GaussRat(Rat r) : re(r) {}
  GaussRat(Rat r, Rat i) : re(r), im(i) {}

  GaussRat operator+(const GaussRat &o) const {
    return {re + o.re, im + o.im};
  }
  GaussRat operator*(const Rat &s) const { return {re * s, im * s}; }
  //! Multiplication by the imaginary unit: (a+ib)·i = −b + ia.
  GaussRat times_i() const { return {Rat(0) + Rat(-1) * im, re}; }
  bool is_zero() const { return re.is_zero() && im.is_zero(); }
};

//=============================================================================
// Master-family terms
//=============================================================================

//! One monomial of the master family (see file header).
struct MasterTerm {
  GaussRat coef;
  int p2pi = 0;  //!< power of 2π
  int pbeta = 0; //!< power of β
  int pgamma = 0; //!< power of γ
  int pP = 0;    //!< power of P = ρ̄₀²
  int pL = 0;    //!< power of L = ℓ²λ_c²/ρ̄₀²
  int pq = 0;    //!< power of q_x
  int pw = 0;    //!< power of ω
  int pmu = 0;   //!< power of μ
  int py = 0;    //!< power of |y|
  int psgn = 0;  //!< power of sgn(y) (kept mod 2)
};

using TermSum = std::vector<MasterTerm>;

enum class Wrt { omega, q_x, abs_y };

//! Exact single derivative of a term sum (stays inside the family).
TermSum derive_once(const TermSum &s, Wrt wrt);
//! Exact repeated derivative, order ≥ 0.
TermSum derive(const TermSum &s, Wrt wrt, int order);

//! Merge equal-exponent terms, drop zeros, sort deterministically.
TermSum canonicalize(TermSum s);

//! Engine representation of the master integral Î_ν, ν ∈ {3,5,7}
//! (reduced: without the plane-wave factor e^{iωz/β}).
TermSum master_family(int nu);

//=============================================================================
// Real-space monomial tables
//=============================================================================

//! One real-space monomial c·β^pb γ^pg P^pP L^pL · trans · z^jz · R_z^n / R^ν
//! with trans ∈ {1, x, y}. These tables define the multipole fields; the
//! same data drives both the real-space reference evaluation and the
//! symbolic Fourier pipeline.
struct RealTerm {
  Rat coef;
  int pbeta = 0, pgamma = 0, pP = 0, pL = 0;
  int trans = 0; //!< 0: none, 1: x, 2: y
  int jz = 0;    //!< explicit z power (z-polynomial bucket)
  int nRz = 0;   //!< R_z power
  int nu = 3;    //!< 3, 5 or 7
};

//! Field-part component tables (comp: 0 = x, 1 = y, 2 = z).
const std::vector<RealTerm> &charge_realterms(int comp);
const std::vector<RealTerm> &dipole_realterms(int comp); //!< × ℓλ_c at runtime
const std::vector<RealTerm> &quadrupole_realterms(int comp);

//! Real-space value of a monomial table at lab point (r, t).
double realterms_eval(const std::vector<RealTerm> &terms, const Beam &beam,
                      double P, double L, const Vec3 &r, double t);

//! Real-space quadrupole field rebuilt from the monomial tables
//! (consistency anchor against the closed-form decomposition).
Vec3 quadrupole_realspace_reference(const LGPacket &p, const Constants &c,
                                    const Vec3 &r, double t);

//! Fourier table of one real-space monomial list, for one z-bucket.
TermSum fourier_from_real(const std::vector<RealTerm> &terms, int bucket);

//=============================================================================
// Evaluation (templated over double / Dual for exact ∂_ω)
//=============================================================================

//! Integer power by squaring; works for double and Dual, p may be < 0.
template <class T> T ipow(T x, int p) {
  if (p < 0)
    return T(1.0) / ipow(x, -p);
  T r(1.0);
  while (p > 0) {
    if (p & 1)
      r = r * x;
    x = x * x;
    p >>= 1;
  }
  return r;
}

//! Evaluation context at one (q_x, y, ω) point.
template <class T> struct FtPoint {
  T q, w, mu, damp; // damp = e^{−μ|y|}
  double beta = 0, gamma = 0, P = 0, L = 0, absy = 0;
  int sgn = 1;
};

template <class T>
FtPoint<T> make_ft_point(T q, double y, T w, const Beam &beam, double P = 0.0,
                         double L = 0.0) {
  if (y == 0.0)
    throw numeric_error("fourier: evaluation on the packet centroid plane "
                        "(|y - h| = 0) is singular");
  using std::exp;
  using std::sqrt;
  FtPoint<T> pt;
  pt.beta = beam.beta;
  pt.gamma = beam.gamma();
  pt.P = P;
  pt.L = L;
  pt.absy = std::fabs(y);
  pt.sgn = (y > 0.0) ? 1 : -1;
  pt.q = q;
  pt.w = w;
  pt.mu = sqrt(w * w / (pt.gamma * pt.gamma * pt.beta * pt.beta) + q * q);
  pt.damp = exp(-pt.mu * T(pt.absy));
  return pt;
}

template <class T> Cx<T> eval_terms(const TermSum &s, const FtPoint<T> &pt) {
  Cx<T> acc;
  for (const MasterTerm &t : s) {
    double pref = 1.0;
    if (t.p2pi)
      pref *= ipow(2.0 * kPi, t.p2pi);
    if (t.pbeta)
      pref *= ipow(pt.beta, t.pbeta);
    if (t.pgamma)
      pref *= ipow(pt.gamma, t.pgamma);
    if (t.pP)
      pref *= ipow(pt.P, t.pP);
    if (t.pL)
      pref *= ipow(pt.L, t.pL);
    if (t.py)
      pref *= ipow(pt.absy, t.py);
    if (t.psgn & 1)
      pref *= pt.sgn;
    T var(pref);
    if (t.pq)
      var = var * ipow(pt.q, t.pq);
    if (t.pw)
      var = var * ipow(pt.w, t.pw);
    if (t.pmu)
      var = var * ipow(pt.mu, t.pmu);
    var = var * pt.damp;
    acc += Cx<T>(T(t.coef.re.value()) * var, T(t.coef.im.value()) * var);
  }
  return acc;
}

//=============================================================================
// Assembled Fourier fields
//=============================================================================

//! z-polynomial coefficients of the quadrupole Fourier field:
//! E_Q = e^{iωz/β}(EQ0 + EQ1·z + EQ2·z²).
struct QuadrupoleFourier {
  Vec3c EQ0, EQ1, EQ2;
};

//! All reduced Fourier field parts at one (q_x, y, ω).
struct FourierField {
  Vec3c E_e, E_mu, E_Q0, E_Q1, E_Q2;
  Vec3c E0() const { return E_e + E_mu + E_Q0; }
};

//! Immutable symbolic tables, built once on first use.
struct FourierTables {
  TermSum charge[3];  //!< engine-built charge field (validated vs closed form)
  TermSum dipole[3];  //!< × ℓλ_c at runtime
  TermSum quad[3][3]; //!< [component][z-bucket]
  static const FourierTables &get();
};

//! Closed-form master integral Î_ν (reduced), ν ∈ {3,5,7}.
cplx master_integral(int nu, double q_x, double y, double omega,
                     const Beam &beam);

//! Closed-form reduced charge field:
//! E_e = (2π/β)(−iq_x, sgn(y)μ, −iω/(βγ²)) e^{−μ|y|}/μ.
template <class T>
Vec3C<T> fourier_charge_t(T q, double y, T w, const Beam &beam) {
  const FtPoint<T> pt = make_ft_point(q, y, w, beam);
  const T common = T(2.0 * kPi / pt.beta) * pt.damp / pt.mu;
  Vec3C<T> E;
  E.x = Cx<T>(T(0.0), -pt.q * common);                         // −i q_x
  E.y = Cx<T>(T((double)pt.sgn) * pt.mu * common, T(0.0));     // sgn·μ
  E.z = Cx<T>(T(0.0),
              -pt.w * common / T(pt.beta * pt.gamma * pt.gamma)); // −iω/βγ²
  return E;
}

//! Closed-form reduced dipole field (prefactor ℓ/2m = ℓλ_c/2):
//! E_μ = −(ℓλ_c/2)(2πiω/(βγ))(sgn(y)μ, iq_x, 0) e^{−μ|y|}/μ.
template <class T>
Vec3C<T> fourier_dipole_t(T q, double y, T w, const Beam &beam,
                          const Constants &c, int ell) {
  const FtPoint<T> pt = make_ft_point(q, y, w, beam);
  const T common = T(0.5 * ell * c.lambda_c * 2.0 * kPi /
                     (pt.beta * pt.gamma)) *
                   pt.w * pt.damp / pt.mu;
  Vec3C<T> E;
  E.x = Cx<T>(T(0.0), -T((double)pt.sgn) * pt.mu * common); // −i·sgn·μ
  E.y = Cx<T>(pt.q * common, T(0.0));                       // −i·(i q_x)
  E.z = Cx<T>(T(0.0), T(0.0));
  return E;
}

Vec3c fourier_charge(double q_x, double y, double omega, const Beam &beam);
Vec3c fourier_dipole(double q_x, double y, double omega, const Beam &beam,
                     const Constants &c, int ell);

//! Engine-table quadrupole z-polynomial coefficients.
QuadrupoleFourier fourier_quadrupole(double q_x, double y, double omega,
                                     const LGPacket &p, const Constants &c);

//! Engine-table evaluation of every part (charge and dipole from their
//! engine tables too — the closed forms above serve as cross-checks).
FourierField fourier_field(double q_x, double y, double omega,
                           const LGPacket &p, const Constants &c);

//! Templated engine evaluation of all parts (used with T = Dual for the
//! exact ∂_ω in the line-shift analysis).
template <class T> struct FourierFieldT {
  Vec3C<T> E_e, E_mu, E_Q0, E_Q1, E_Q2;
};

template <class T>
FourierFieldT<T> fourier_field_t(T q, double y, T w, const LGPacket &p,
                                 const Constants &c) {
  p.validate();
  c.validate();
  const double P = p.rho0 * p.rho0;
  const double L =
      (double)p.ell * p.ell * c.lambda_c * c.lambda_c / P;
  const FtPoint<T> pt = make_ft_point(q, y, w, p.beam, P, L);
  const FourierTables &tab = FourierTables::get();
  const double mufac = p.ell * c.lambda_c; // signed dipole scale ℓλ_c
  FourierFieldT<T> f;
  Vec3C<T> *quads[3] = {&f.E_Q0, &f.E_Q1, &f.E_Q2};
  Cx<T> *charge_c[3] = {&f.E_e.x, &f.E_e.y, &f.E_e.z};
  Cx<T> *dip_c[3] = {&f.E_mu.x, &f.E_mu.y, &f.E_mu.z};
  for (int comp = 0; comp < 3; ++comp) {
    *charge_c[comp] = eval_terms(tab.charge[comp], pt);
    *dip_c[comp] = eval_terms(tab.dipole[comp], pt) * T(mufac);
    for (int b = 0; b < 3; ++b) {
      const Cx<T> v = eval_terms(tab.quad[comp][b], pt);
      Cx<T> *slot = (comp == 0) ? &quads[b]->x
                                : (comp == 1) ? &quads[b]->y : &quads[b]->z;
      *slot = v;
    }
  }
  return f;
}

//! Plain-text dump of all symbolic tables (one term per line).
std::string fourier_debug_dump();

} // namespace spv
