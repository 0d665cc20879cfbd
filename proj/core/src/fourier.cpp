// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0

#include "spvortex/fourier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "spvortex/errors.hpp"
#include "spvortex/fields.hpp"

namespace spv {

//=============================================================================
// Exact rationals
//=============================================================================

Rat::Rat(long long n, long long d) {
  if (d == 0)
    throw std::invalid_argument("Rat: zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  const long long g = std::gcd(n < 0 ? -n : n, d);
  num = (g != 0) ? n / g : 0;
  den = (g != 0) ? d / g : 1;
}

Rat Rat::operator+(const Rat &o) const {
  return Rat(num * o.den + o.num * den, den * o.den);
}

Rat Rat::operator*(const Rat &o) const { return Rat(num * o.num, den * o.den); }

//=============================================================================
// Master family: symbolic calculus
//=============================================================================

namespace {

using Key = std::array<int, 10>;

Key key_of(const MasterTerm &t) {
  return {t.p2pi, t.pbeta, t.pgamma, t.pP, t.pL,
          t.pq,   t.pw,    t.pmu,    t.py, t.psgn & 1};
}

} // namespace

TermSum canonicalize(TermSum s) {
  for (MasterTerm &t : s)
    t.psgn &= 1;
  std::sort(s.begin(), s.end(), [](const MasterTerm &a, const MasterTerm &b) {
    return key_of(a) < key_of(b);
  });
  TermSum out;
  for (const MasterTerm &t : s) {
    if (!out.empty() && key_of(out.back()) == key_of(t))
      out.back().coef = out.back().coef + t.coef;
    else
      out.push_back(t);
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const MasterTerm &t) { return t.coef.is_zero(); }),
            out.end());
  return out;
}

TermSum derive_once(const TermSum &s, Wrt wrt) {
  TermSum out;
  out.reserve(3 * s.size());
  for (const MasterTerm &t : s) {
    switch (wrt) {
    case Wrt::omega: {
      // ∂μ/∂ω = ω/(β²γ²μ);  ∂e^{−μ|y|}/∂ω = −|y| ω/(β²γ²μ) e^{−μ|y|}.
      if (t.pw != 0) {
        MasterTerm a = t;
        a.coef = a.coef * Rat(t.pw);
        a.pw -= 1;
        out.push_back(a);
      }
      if (t.pmu != 0) {
        MasterTerm b = t;
        b.coef = b.coef * Rat(t.pmu);
        b.pmu -= 2;
        b.pw += 1;
        b.pbeta -= 2;
        b.pgamma -= 2;
        out.push_back(b);
      }
      MasterTerm c = t;
      c.coef = c.coef * Rat(-1);
      c.py += 1;
      c.pw += 1;
      c.pmu -= 1;
      c.pbeta -= 2;
      c.pgamma -= 2;
      out.push_back(c);
      break;
    }
    case Wrt::q_x: {
      // ∂μ/∂q_x = q_x/μ.
      if (t.pq != 0) {
        MasterTerm a = t;
        a.coef = a.coef * Rat(t.pq);
        a.pq -= 1;
        out.push_back(a);
      }
      if (t.pmu != 0) {
        MasterTerm b = t;
        b.coef = b.coef * Rat(t.pmu);
        b.pmu -= 2;
        b.pq += 1;
        out.push_back(b);
      }
      MasterTerm c = t;
      c.coef = c.coef * Rat(-1);
      c.py += 1;
      c.pq += 1;
      c.pmu -= 1;
      out.push_back(c);
      break;
    }
    case Wrt::abs_y: {
      if (t.py != 0) {
        MasterTerm a = t;
        a.coef = a.coef * Rat(t.py);
        a.py -= 1;
        out.push_back(a);
      }
      MasterTerm c = t;
      c.coef = c.coef * Rat(-1);
      c.pmu += 1;
      out.push_back(c);
      break;
    }
    }
  }
  return canonicalize(std::move(out));
}

TermSum derive(const TermSum &s, Wrt wrt, int order) {
  if (order < 0)
    throw std::invalid_argument("derive: negative order");
  TermSum out = canonicalize(s);
  for (int k = 0; k < order; ++k)
    out = derive_once(out, wrt);
  return out;
}

TermSum master_family(int nu) {
  MasterTerm base;
  base.coef = GaussRat(Rat(1));
  base.p2pi = 1;
  base.pbeta = -1;
  base.pgamma = -1;
  TermSum s;
  switch (nu) {
  case 3: {
    MasterTerm t = base;
    t.coef = GaussRat(Rat(1));
    t.py = -1;
    s = {t};
    break;
  }
  case 5: {
    MasterTerm t1 = base, t2 = base;
    t1.coef = GaussRat(Rat(1, 3));
    t1.py = -3;
    t2.coef = GaussRat(Rat(1, 3));
    t2.pmu = 1;
    t2.py = -2;
    s = {t1, t2};
    break;
  }
  case 7: {
    MasterTerm t1 = base, t2 = base, t3 = base;
    t1.coef = GaussRat(Rat(1, 5));
    t1.py = -5;
    t2.coef = GaussRat(Rat(1, 5));
    t2.pmu = 1;
    t2.py = -4;
    t3.coef = GaussRat(Rat(1, 15));
    t3.pmu = 2;
    t3.py = -3;
    s = {t1, t2, t3};
    break;
  }
  default:
    throw std::invalid_argument("master_family: nu must be 3, 5 or 7");
  }
  return canonicalize(std::move(s));
}

//=============================================================================
// Real-space monomial tables
//=============================================================================

namespace {

RealTerm rt(Rat coef, int pbeta, int pgamma, int pP, int pL, int trans, int jz,
            int nRz, int nu) {
  RealTerm t;
  t.coef = coef;
  t.pbeta = pbeta;
  t.pgamma = pgamma;
  t.pP = pP;
  t.pL = pL;
  t.trans = trans;
  t.jz = jz;
  t.nRz = nRz;
  t.nu = nu;
  return t;
}

// Quadrupole transverse bracket (x or y component), after the packet time
// has been rewritten in lab variables through T_z = z/(βγ) − R_z/β:
//   E_Q,t = γ·(x|y)·(1/4)[ 3P(1/R⁵ − 5R_z²/R⁷) + L·b_t/R³ ],
//   b_t   = (3/β²γ²)z²/R² − (15/β²γ²)z²R_z²/R⁴ − (6/γ)(1/β²+1)zR_z/R²
//         + (30/β²γ)zR_z³/R⁴ + (3/β²+9)R_z²/R² − (15/β²)R_z⁴/R⁴ − 1.
std::vector<RealTerm> quad_trans_terms(int trans) {
  return {
      rt(Rat(3, 4), 0, 1, 1, 0, trans, 0, 0, 5),
      rt(Rat(-15, 4), 0, 1, 1, 0, trans, 0, 2, 7),
      rt(Rat(-1, 4), 0, 1, 0, 1, trans, 0, 0, 3),
      rt(Rat(3, 4), -2, -1, 0, 1, trans, 2, 0, 5),
      rt(Rat(-15, 4), -2, -1, 0, 1, trans, 2, 2, 7),
      rt(Rat(-3, 2), -2, 0, 0, 1, trans, 1, 1, 5),
      rt(Rat(-3, 2), 0, 0, 0, 1, trans, 1, 1, 5),
      rt(Rat(15, 2), -2, 0, 0, 1, trans, 1, 3, 7),
      rt(Rat(3, 4), -2, 1, 0, 1, trans, 0, 2, 5),
      rt(Rat(9, 4), 0, 1, 0, 1, trans, 0, 2, 5),
      rt(Rat(-15, 4), -2, 1, 0, 1, trans, 0, 4, 7),
  };
}

// Quadrupole longitudinal bracket:
//   E_Q,z = (1/4)[ 3P(3R_z/R⁵ − 5R_z³/R⁷) + L·b_l·R_z/R³ ],
//   b_l   = (9/β²γ²)z²/R² − (15/β²γ²)z²R_z²/R⁴ − (18/β²γ)zR_z/R²
//         + (30/β²γ)zR_z³/R⁴ + (9/β²+3)R_z²/R² − (15/β²)R_z⁴/R⁴ − 1.
std::vector<RealTerm> quad_long_terms() {
  return {
      rt(Rat(9, 4), 0, 0, 1, 0, 0, 0, 1, 5),
      rt(Rat(-15, 4), 0, 0, 1, 0, 0, 0, 3, 7),
      rt(Rat(-1, 4), 0, 0, 0, 1, 0, 0, 1, 3),
      rt(Rat(9, 4), -2, -2, 0, 1, 0, 2, 1, 5),
      rt(Rat(-15, 4), -2, -2, 0, 1, 0, 2, 3, 7),
      rt(Rat(-9, 2), -2, -1, 0, 1, 0, 1, 2, 5),
      rt(Rat(15, 2), -2, -1, 0, 1, 0, 1, 4, 7),
      rt(Rat(9, 4), -2, 0, 0, 1, 0, 0, 3, 5),
      rt(Rat(3, 4), 0, 0, 0, 1, 0, 0, 3, 5),
      rt(Rat(-15, 4), -2, 0, 0, 1, 0, 0, 5, 7),
  };
}

} // namespace

const std::vector<RealTerm> &charge_realterms(int comp) {
  static const std::vector<RealTerm> tx = {rt(Rat(1), 0, 1, 0, 0, 1, 0, 0, 3)};
  static const std::vector<RealTerm> ty = {rt(Rat(1), 0, 1, 0, 0, 2, 0, 0, 3)};
  static const std::vector<RealTerm> tz = {rt(Rat(1), 0, 0, 0, 0, 0, 0, 1, 3)};
  switch (comp) {
  case 0:
    return tx;
  case 1:
    return ty;
  case 2:
    return tz;
  }
  throw std::invalid_argument("charge_realterms: comp must be 0, 1 or 2");
}

const std::vector<RealTerm> &dipole_realterms(int comp) {
  // E_μ / (ℓλ_c) = (3/2)βγ·R_z/R⁵ · (y, −x, 0).
  static const std::vector<RealTerm> tx = {rt(Rat(3, 2), 1, 1, 0, 0, 2, 0, 1, 5)};
  static const std::vector<RealTerm> ty = {
      rt(Rat(-3, 2), 1, 1, 0, 0, 1, 0, 1, 5)};
  static const std::vector<RealTerm> tz = {};
  switch (comp) {
  case 0:
    return tx;
  case 1:
    return ty;
  case 2:
    return tz;
  }
  throw std::invalid_argument("dipole_realterms: comp must be 0, 1 or 2");
}

const std::vector<RealTerm> &quadrupole_realterms(int comp) {
  static const std::vector<RealTerm> tx = quad_trans_terms(1);
  static const std::vector<RealTerm> ty = quad_trans_terms(2);
  static const std::vector<RealTerm> tz = quad_long_terms();
  switch (comp) {
  case 0:
    return tx;
  case 1:
    return ty;
  case 2:
    return tz;
  }
  throw std::invalid_argument("quadrupole_realterms: comp must be 0, 1 or 2");
}

double realterms_eval(const std::vector<RealTerm> &terms, const Beam &beam,
                      double P, double L, const Vec3 &r, double t) {
  const double beta = beam.beta;
  const double gamma = beam.gamma();
  const double Rz = gamma * (r.z - beta * t);
  const double R = std::sqrt(r.x * r.x + r.y * r.y + Rz * Rz);
  double acc = 0.0;
  for (const RealTerm &rt : terms) {
    double v = rt.coef.value();
    v *= ipow(beta, rt.pbeta) * ipow(gamma, rt.pgamma);
    v *= ipow(P, rt.pP) * ipow(L, rt.pL);
    if (rt.trans == 1)
      v *= r.x;
    else if (rt.trans == 2)
      v *= r.y;
    v *= ipow(r.z, rt.jz) * ipow(Rz, rt.nRz) / ipow(R, rt.nu);
    acc += v;
  }
  return acc;
}

Vec3 quadrupole_realspace_reference(const LGPacket &p, const Constants &c,
                                    const Vec3 &r, double t) {
  p.validate();
  c.validate();
  const double P = p.rho0 * p.rho0;
  const double L = (double)p.ell * p.ell * c.lambda_c * c.lambda_c / P;
  return {realterms_eval(quadrupole_realterms(0), p.beam, P, L, r, t),
          realterms_eval(quadrupole_realterms(1), p.beam, P, L, r, t),
          realterms_eval(quadrupole_realterms(2), p.beam, P, L, r, t)};
}

//=============================================================================
// Symbolic Fourier pipeline
//=============================================================================

TermSum fourier_from_real(const std::vector<RealTerm> &terms, int bucket) {
  TermSum out;
  for (const RealTerm &rt : terms) {
    if (rt.jz != bucket)
      continue;
    TermSum s = master_family(rt.nu);
    // Each power of R_z maps to γ·(iβ∂_ω) on the reduced transform.
    for (int k = 0; k < rt.nRz; ++k) {
      s = derive_once(s, Wrt::omega);
      for (MasterTerm &t : s) {
        t.coef = t.coef.times_i();
        t.pbeta += 1;
        t.pgamma += 1;
      }
    }
    // The transverse factor: x maps to i∂_{q_x}; y to sgn(y)·|y|.
    if (rt.trans == 1) {
      s = derive_once(s, Wrt::q_x);
      for (MasterTerm &t : s)
        t.coef = t.coef.times_i();
    } else if (rt.trans == 2) {
      for (MasterTerm &t : s) {
        t.psgn += 1;
        t.py += 1;
      }
    }
    for (MasterTerm &t : s) {
      t.coef = GaussRat(t.coef.re * rt.coef, t.coef.im * rt.coef);
      t.pbeta += rt.pbeta;
      t.pgamma += rt.pgamma;
      t.pP += rt.pP;
      t.pL += rt.pL;
    }
    out.insert(out.end(), s.begin(), s.end());
  }
  return canonicalize(std::move(out));
}

const FourierTables &FourierTables::get() {
  static const FourierTables tables = [] {
    FourierTables t;
    for (int comp = 0; comp < 3; ++comp) {
      t.charge[comp] = fourier_from_real(charge_realterms(comp), 0);
      t.dipole[comp] = fourier_from_real(dipole_realterms(comp), 0);
      for (int b = 0; b < 3; ++b)
        t.quad[comp][b] = fourier_from_real(quadrupole_realterms(comp), b);
    }
    return t;
  }();
  return tables;
}

//=============================================================================
// Closed forms and assembled fields
//=============================================================================

cplx master_integral(int nu, double q_x, double y, double omega,
                     const Beam &beam) {
  beam.validate();
  const FtPoint<double> pt = make_ft_point(q_x, y, omega, beam);
  const double pref = 2.0 * kPi / (pt.gamma * pt.beta);
  const double Y = pt.absy;
  const double muY = pt.mu * Y;
  double val = 0.0;
  switch (nu) {
  case 3:
    val = pref * pt.damp / Y;
    break;
  case 5:
    val = pref * (1.0 + muY) / (3.0 * Y * Y * Y) * pt.damp;
    break;
  case 7:
    val = pref * (3.0 + 3.0 * muY + muY * muY) / (15.0 * ipow(Y, 5)) * pt.damp;
    break;
  default:
    throw std::invalid_argument("master_integral: nu must be 3, 5 or 7");
  }
  return cplx(val, 0.0);
}

Vec3c fourier_charge(double q_x, double y, double omega, const Beam &beam) {
  beam.validate();
  return to_vec3c(fourier_charge_t(q_x, y, omega, beam));
}

Vec3c fourier_dipole(double q_x, double y, double omega, const Beam &beam,
                     const Constants &c, int ell) {
  beam.validate();
  c.validate();
  if (ell == 0)
    throw parameter_error("fourier_dipole: ell must be nonzero");
  return to_vec3c(fourier_dipole_t(q_x, y, omega, beam, c, ell));
}

QuadrupoleFourier fourier_quadrupole(double q_x, double y, double omega,
                                     const LGPacket &p, const Constants &c) {
  const FourierFieldT<double> f = fourier_field_t(q_x, y, omega, p, c);
  QuadrupoleFourier q;
  q.EQ0 = to_vec3c(f.E_Q0);
  q.EQ1 = to_vec3c(f.E_Q1);
  q.EQ2 = to_vec3c(f.E_Q2);
  return q;
}

FourierField fourier_field(double q_x, double y, double omega,
                           const LGPacket &p, const Constants &c) {
  const FourierFieldT<double> f = fourier_field_t(q_x, y, omega, p, c);
  FourierField out;
  out.E_e = to_vec3c(f.E_e);
  out.E_mu = to_vec3c(f.E_mu);
  out.E_Q0 = to_vec3c(f.E_Q0);
  out.E_Q1 = to_vec3c(f.E_Q1);
  out.E_Q2 = to_vec3c(f.E_Q2);
  return out;
}

//=============================================================================
// Debug dump
//=============================================================================

namespace {

void print_rat(std::ostringstream &os, const Rat &r) {
  os << r.num;
  if (r.den != 1)
    os << "/" << r.den;
}

void print_term(std::ostringstream &os, const MasterTerm &t) {
  os << "  (";
  print_rat(os, t.coef.re);
  if (!t.coef.im.is_zero()) {
    os << (t.coef.im.num < 0 ? " - " : " + ");
    Rat a = t.coef.im;
    if (a.num < 0)
      a.num = -a.num;
    print_rat(os, a);
    os << "i";
  }
  os << ")";
  auto pw = [&os](const char *name, int p) {
    if (p != 0)
      os << " " << name << "^" << p;
  };
  pw("(2pi)", t.p2pi);
  pw("beta", t.pbeta);
  pw("gamma", t.pgamma);
  pw("P", t.pP);
  pw("L", t.pL);
  pw("q", t.pq);
  pw("w", t.pw);
  pw("mu", t.pmu);
  pw("|y|", t.py);
  if (t.psgn & 1)
    os << " sgn(y)";
  os << " exp(-mu|y|)\n";
}

void print_table(std::ostringstream &os, const char *name, const TermSum &s) {
  os << "# " << name << "  (" << s.size() << " terms)\n";
  for (const MasterTerm &t : s)
    print_term(os, t);
}

} // namespace

std::string fourier_debug_dump() {
  const FourierTables &tab = FourierTables::get();
  static const char *comps[3] = {"x", "y", "z"};
  std::ostringstream os;
  os << "# Reduced Fourier tables: coefficient then monomial powers.\n";
  for (int c = 0; c < 3; ++c) {
    print_table(os, (std::string("charge E_") + comps[c]).c_str(),
                tab.charge[c]);
  }
  for (int c = 0; c < 3; ++c) {
    print_table(os, (std::string("dipole E_") + comps[c] + " / (l*lambda_c)")
                        .c_str(),
                tab.dipole[c]);
  }
  for (int c = 0; c < 3; ++c)
    for (int b = 0; b < 3; ++b) {
      std::ostringstream name;
      name << "quadrupole E_" << comps[c] << "  z^" << b << " bucket";
      print_table(os, name.str().c_str(), tab.quad[c][b]);
    }
  return os.str();
}

} // namespace spv
