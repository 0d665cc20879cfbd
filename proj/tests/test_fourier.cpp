// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0
//
// Planar Fourier transforms: the exact symbolic term algebra, the closed
// master integrals, the assembled charge/dipole/quadrupole tables, and
// independent damped-quadrature oracles for both.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <spvortex/dual.hpp>
#include <spvortex/fourier.hpp>
#include <spvortex/units.hpp>

#include "oracles.hpp"

using namespace spv;
using spvtest::lagrange_eval;
using spvtest::fd5;

namespace {

Beam beam_of(double beta) {
  Beam b;
  b.beta = beta;
  return b;
}

//! Order-one fictitious packet: the table algebra is unit-agnostic, so
//! tests of structure (not physics) may run at q, y, ω ~ O(1).
LGPacket unit_packet(double beta = 0.5, int ell = 2) {
  LGPacket p;
  p.beam.beta = beta;
  p.rho0 = 0.25;
  p.ell = ell;
  return p;
}

bool same_rat(const Rat &a, const Rat &b) {
  return a.num == b.num && a.den == b.den;
}

bool same_terms(const TermSum &a, const TermSum &b) {
  if (a.size() != b.size())
    return false;
  for (size_t i = 0; i < a.size(); ++i) {
    const MasterTerm &s = a[i], &t = b[i];
    if (!same_rat(s.coef.re, t.coef.re) || !same_rat(s.coef.im, t.coef.im))
      return false;
    if (s.p2pi != t.p2pi || s.pbeta != t.pbeta || s.pgamma != t.pgamma ||
        s.pP != t.pP || s.pL != t.pL || s.pq != t.pq || s.pw != t.pw ||
        s.pmu != t.pmu || s.py != t.py || (s.psgn & 1) != (t.psgn & 1))
      return false;
  }
  return true;
}

double cx_dist(const std::complex<double> &a, const Cx<double> &b) {
  return std::abs(a - std::complex<double>(b.re, b.im));
}

} // namespace

TEST_SUITE("fourier") {

TEST_CASE("master family tables evaluate to the closed master integrals") {
  const double qs[] = {0.8, -1.2, 0.3};
  const double ys[] = {0.7, -0.5, 1.5};
  const double ws[] = {1.3, 0.6, 2.0};
  const double bs[] = {0.5, 0.35, 0.8};
  for (int nu : {3, 5, 7}) {
    const TermSum fam = master_family(nu);
    for (int i = 0; i < 3; ++i) {
      const Beam b = beam_of(bs[i]);
      const cplx closed = master_integral(nu, qs[i], ys[i], ws[i], b);
      const auto pt = make_ft_point(qs[i], ys[i], ws[i], b);
      const Cx<double> sym = eval_terms(fam, pt);
      CHECK(cx_dist(closed, sym) <= 1e-13 * std::abs(closed));
      CHECK(std::abs(closed.imag()) <= 1e-15 * std::abs(closed.real()));
    }
  }
}

TEST_CASE("radial recurrence between the master integrals is exact") {
  // d/d|y| of the 1/R^nu transform equals -nu*|y| times the 1/R^(nu+2)
  // one, so -(1/nu)*(1/|y|)*d/d|y| maps each family onto the next. The
  // comparison is exact rational term algebra, not numerics.
  auto step = [](int nu) {
    TermSum d = derive(master_family(nu), Wrt::abs_y, 1);
    for (MasterTerm &t : d) {
      t.coef = t.coef * Rat(-1, nu);
      t.py -= 1;
    }
    return canonicalize(std::move(d));
  };
  CHECK(same_terms(step(3), master_family(5)));
  CHECK(same_terms(step(5), master_family(7)));
}

TEST_CASE("symbolic derivatives agree with finite differences and duals") {
  const double q0 = 0.8, y0 = 0.7, w0 = 1.3;
  const Beam b = beam_of(0.5);
  const LGPacket p = unit_packet();
  const double P = p.rho0 * p.rho0;
  const double L = 4.0 * 1e-4 / P; // ell^2 lambda_c^2 / P with lc = 0.01
  const FourierTables &tab = FourierTables::get();
  const TermSum tables[] = {master_family(7), tab.charge[2], tab.quad[2][1],
                            tab.quad[0][0]};
  for (const TermSum &ts : tables) {
    auto val = [&](double q, double w, bool re) {
      const auto pt = make_ft_point(q, y0, w, b, P, L);
      const Cx<double> v = eval_terms(ts, pt);
      return re ? v.re : v.im;
    };
    for (bool re : {true, false}) {
      // First and second omega derivatives, one q derivative.
      const TermSum dw1 = derive(ts, Wrt::omega, 1);
      const TermSum dw2 = derive(ts, Wrt::omega, 2);
      const TermSum dq1 = derive(ts, Wrt::q_x, 1);
      const auto pt = make_ft_point(q0, y0, w0, b, P, L);
      const double sw1 = re ? eval_terms(dw1, pt).re : eval_terms(dw1, pt).im;
      const double sw2 = re ? eval_terms(dw2, pt).re : eval_terms(dw2, pt).im;
      const double sq1 = re ? eval_terms(dq1, pt).re : eval_terms(dq1, pt).im;
      const double fw1 =
          fd5([&](double w) { return val(q0, w, re); }, w0, 1e-5);
      const double fw2 = fd5(
          [&](double w) {
            const auto p2 = make_ft_point(q0, y0, w, b, P, L);
            return re ? eval_terms(dw1, p2).re : eval_terms(dw1, p2).im;
          },
          w0, 1e-5);
      const double fq1 =
          fd5([&](double q) { return val(q, w0, re); }, q0, 1e-5);
      const double scale = std::abs(val(q0, w0, re)) + 1.0;
      CHECK(std::abs(sw1 - fw1) <= 1e-7 * (std::abs(sw1) + scale));
      CHECK(std::abs(sw2 - fw2) <= 1e-7 * (std::abs(sw2) + scale));
      CHECK(std::abs(sq1 - fq1) <= 1e-7 * (std::abs(sq1) + scale));
    }
    // Dual-number seed in omega reproduces the symbolic omega derivative
    // to rounding (two fully independent differentiation routes).
    const auto ptd =
        make_ft_point(Dual(q0), y0, Dual(w0, 1.0), b, P, L);
    const Cx<Dual> vd = eval_terms(ts, ptd);
    const auto pt0 = make_ft_point(q0, y0, w0, b, P, L);
    const Cx<double> sd = eval_terms(derive(ts, Wrt::omega, 1), pt0);
    const double sc = std::abs(vd.re.v) + std::abs(vd.im.v) + 1.0;
    CHECK(vd.re.d == doctest::Approx(sd.re).epsilon(1e-12).scale(sc));
    CHECK(vd.im.d == doctest::Approx(sd.im).epsilon(1e-12).scale(sc));
  }
}

TEST_CASE("engine charge and dipole tables reproduce the closed forms") {
  Constants c;
  c.lambda_c = 0.01;
  for (double beta : {0.4, 0.75})
    for (int ell : {3, -7})
      for (double q : {-1.5, -0.4, 0.7, 1.3})
        for (double y : {-1.1, 0.8})
          for (double w : {0.5, 1.9}) {
            LGPacket p = unit_packet(beta, ell);
            const FourierField f = fourier_field(q, y, w, p, c);
            const Vec3C<double> ce = fourier_charge_t(q, y, w, p.beam);
            const Vec3C<double> cm =
                fourier_dipole_t(q, y, w, p.beam, c, ell);
            const double se =
                std::sqrt(std::norm(f.E_e.x) + std::norm(f.E_e.y) +
                          std::norm(f.E_e.z));
            const double sm =
                std::sqrt(std::norm(f.E_mu.x) + std::norm(f.E_mu.y) +
                          std::norm(f.E_mu.z));
            CHECK(cx_dist(f.E_e.x, ce.x) <= 1e-12 * se);
            CHECK(cx_dist(f.E_e.y, ce.y) <= 1e-12 * se);
            CHECK(cx_dist(f.E_e.z, ce.z) <= 1e-12 * se);
            CHECK(cx_dist(f.E_mu.x, cm.x) <= 1e-12 * sm);
            CHECK(cx_dist(f.E_mu.y, cm.y) <= 1e-12 * sm);
            CHECK(cx_dist(f.E_mu.z, cm.z) <= 1e-12 * sm);
            // Plain wrappers and the templated engine agree too.
            const Vec3c we = fourier_charge(q, y, w, p.beam);
            const Vec3c wm = fourier_dipole(q, y, w, p.beam, c, ell);
            CHECK(std::abs(we.x - f.E_e.x) <= 1e-13 * se);
            CHECK(std::abs(wm.x - f.E_mu.x) <= 1e-13 * sm);
            const auto ft = fourier_field_t(q, y, w, p, c);
            CHECK(cx_dist(f.E_Q1.z, ft.E_Q1.z) == 0.0);
            CHECK(cx_dist(f.E_e.y, ft.E_e.y) == 0.0);
          }
}

TEST_CASE("quadrupole monomials embed the -L/4 image of the charge field") {
  // The spreading bracket carries a "-1" whose contribution is exactly
  // -(L/4) times the charge field; the real-space tables must contain
  // that monomial verbatim (same shape, coefficient scaled by -1/4,
  // one extra power of L).
  for (int comp = 0; comp < 3; ++comp) {
    const std::vector<RealTerm> &ch = charge_realterms(comp);
    REQUIRE(ch.size() == 1);
    const RealTerm &c0 = ch[0];
    bool found = false;
    for (const RealTerm &t : quadrupole_realterms(comp)) {
      if (t.nu == 3 && t.jz == 0 && t.trans == c0.trans &&
          t.nRz == c0.nRz && t.pbeta == c0.pbeta &&
          t.pgamma == c0.pgamma && t.pP == 0 && t.pL == 1) {
        CHECK(same_rat(t.coef, c0.coef * Rat(-1, 4)));
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("quadrupole Fourier parts are damped polynomials in |y|") {
  // Every table term is coef * mu^a * q^b * w^c * |y|^p * exp(-mu|y|)
  // with p >= -5, so exp(+mu|y|) * y^5 * EQb is a polynomial in y of
  // low degree at fixed (q, omega). Twelve nodes therefore predict any
  // thirteenth value exactly.
  const LGPacket p = unit_packet();
  Constants c;
  c.lambda_c = 0.01;
  const double q = 0.7, w = 1.1;
  const double mu = std::sqrt(
      w * w / (p.beam.gamma() * p.beam.gamma() * p.beam.beta * p.beam.beta) +
      q * q);
  std::vector<double> nodes;
  for (int k = 0; k < 12; ++k)
    nodes.push_back(0.6 + 0.08 * k);
  const double ys = 1.03;
  for (int bucket = 0; bucket < 3; ++bucket)
    for (int comp = 0; comp < 3; ++comp)
      for (bool re : {true, false}) {
        auto g = [&](double y) {
          const QuadrupoleFourier qf = fourier_quadrupole(q, y, w, p, c);
          const Vec3c &v =
              bucket == 0 ? qf.EQ0 : (bucket == 1 ? qf.EQ1 : qf.EQ2);
          const cplx e = comp == 0 ? v.x : (comp == 1 ? v.y : v.z);
          const double part = re ? e.real() : e.imag();
          return part * std::exp(mu * y) * std::pow(y, 5);
        };
        std::vector<double> vals;
        double scale = 0.0;
        for (double y : nodes) {
          vals.push_back(g(y));
          scale = std::max(scale, std::abs(vals.back()));
        }
        if (scale < 1e-300)
          continue; // identically-zero component
        const double pred = lagrange_eval(nodes, vals, ys);
        CHECK(std::abs(pred - g(ys)) <= 1e-9 * scale);
      }
}

TEST_CASE("master integrals agree with damped-quadrature oracle") {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int accepted = 0;
  const int want = 6;
  const int nus[] = {3, 5, 7};
  while (accepted < want) {
    const double beta = 0.35 + 0.45 * u01(rng);
    const Beam b = beam_of(beta);
    const double y = (u01(rng) < 0.5 ? -1.0 : 1.0) * (0.4 + 1.6 * u01(rng));
    const double w = 0.5 + 1.5 * u01(rng);
    const double q = -1.5 + 3.0 * u01(rng);
    const double gb = b.gamma() * b.beta;
    const double mu = std::sqrt(w * w / (gb * gb) + q * q);
    if (mu * std::abs(y) > 3.5 || w / gb > 2.5)
      continue; // keep the damped quadrature well-conditioned
    const int nu = nus[accepted % 3];
    const cplx closed = master_integral(nu, q, y, w, b);
    const double oracle = spvtest::master_oracle(nu, q, y, w, b);
    CHECK(std::abs(closed.real() - oracle) <= 1e-6 * std::abs(oracle));
    ++accepted;
  }
}

TEST_CASE("quadrupole z-buckets agree with quadrature of the real field") {
  LGPacket p;
  p.beam.beta = 0.5;
  p.rho0 = 3e-7;
  p.ell = 1000;
  Constants c;
  c.lambda_c = 3.9e-13;
  const double q = 0.8, y = -0.7, w = 1.3;
  const QuadrupoleFourier qf = fourier_quadrupole(q, y, w, p, c);
  for (double z : {0.0, 0.5, -0.8}) {
    cplx pred[3] = {qf.EQ0.x + qf.EQ1.x * z + qf.EQ2.x * z * z,
                    qf.EQ0.y + qf.EQ1.y * z + qf.EQ2.y * z * z,
                    qf.EQ0.z + qf.EQ1.z * z + qf.EQ2.z * z * z};
    double scale = 0.0;
    for (const cplx &v : pred)
      scale = std::max(scale, std::abs(v));
    for (int comp = 0; comp < 3; ++comp) {
      const cplx oracle = spvtest::eq_reduced_oracle(comp, z, q, y, w, p, c,
                                                     2e-3, 3e-7 * scale);
      CHECK(std::abs(oracle - pred[comp]) <= 1e-4 * scale);
    }
  }
}

TEST_CASE("evaluation on the centroid plane is rejected") {
  const Beam b = beam_of(0.5);
  CHECK_THROWS_AS(fourier_charge(0.5, 0.0, 1.0, b), numeric_error);
  const LGPacket p = unit_packet();
  Constants c;
  c.lambda_c = 0.01;
  CHECK_THROWS_AS(fourier_field(0.5, 0.0, 1.0, p, c), numeric_error);
}

TEST_CASE("evanescent decay and OAM parity of the plane fields") {
  const LGPacket p = unit_packet(0.6, 5);
  LGPacket m = p;
  m.ell = -p.ell;
  Constants c;
  c.lambda_c = 0.01;
  const double q = 0.9, y = 0.5, w = 1.2;
  const double gb = p.beam.gamma() * p.beam.beta;
  const double mu = std::sqrt(w * w / (gb * gb) + q * q);
  // The charge component carries no |y| polynomial: doubling the height
  // multiplies every component by exactly exp(-mu*y).
  const Vec3c e1 = fourier_charge(q, y, w, p.beam);
  const Vec3c e2 = fourier_charge(q, 2.0 * y, w, p.beam);
  const double ratio = std::exp(-mu * y);
  CHECK(std::abs(e2.x / e1.x - ratio) <= 1e-12 * ratio);
  CHECK(std::abs(e2.z / e1.z - ratio) <= 1e-12 * ratio);
  const FourierField a = fourier_field(q, y, w, p, c);
  const FourierField bfld = fourier_field(q, y, w, m, c);
  CHECK(std::abs(a.E_mu.x + bfld.E_mu.x) <= 1e-15 * std::abs(a.E_mu.x));
  CHECK(std::abs(a.E_mu.y + bfld.E_mu.y) <= 1e-15 * std::abs(a.E_mu.y));
  CHECK(std::abs(a.E_e.x - bfld.E_e.x) == 0.0);
  CHECK(std::abs(a.E_Q0.z - bfld.E_Q0.z) == 0.0);
  CHECK(std::abs(a.E_Q2.y - bfld.E_Q2.y) == 0.0);
}

} // TEST_SUITE
