// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0

#include "spvortex/fields.hpp"

#include <cmath>

namespace spv {

namespace {

//! Shared packet scales: P = ρ̄₀² (static quadrupole size) and
//! L = ℓ²λ_c²/ρ̄₀² (non-paraxial quadrupole strength); μ-scale ℓ/2m.
struct Scales {
  double P, L, mu; // mu = ℓ λ_c / 2 (signed)
};

Scales scales_of(const LGPacket &p, const Constants &c) {
  p.validate();
  c.validate();
  const double lc = c.lambda_c;
  Scales s;
  s.P = p.rho0 * p.rho0;
  s.L = (double)p.ell * p.ell * lc * lc / s.P;
  s.mu = 0.5 * p.ell * lc;
  return s;
}

//! The multipole expansion converges in powers of ρ̄(t)/R, so evaluation
//! is refused within a few spreading radii of the packet center. The
//! caller-supplied guard scales this exclusion radius.
constexpr double kGuardMultiple = 10.0;

void guard_radius(double R, double spread, double guard, const char *where) {
  if (!(R > guard * kGuardMultiple * spread))
    throw numeric_error(std::string(where) +
                        ": field point inside the packet spread "
                        "(multipole expansion invalid)");
}

} // namespace

BoostedCoords boosted_coords(const Beam &beam, const Vec3 &r, double t) {
  const double g = beam.gamma();
  BoostedCoords bc;
  bc.Rz = g * (r.z - beam.beta * t);
  bc.Tz = g * (t - beam.beta * r.z);
  bc.R = std::sqrt(r.x * r.x + r.y * r.y + bc.Rz * bc.Rz);
  return bc;
}

EMField field_rest(const LGPacket &p, const Constants &c, const Vec3 &r,
                   double t, double guard) {
  const Scales s = scales_of(p, c);
  const double rr = r.norm();
  guard_radius(rr, rho_bar(p, c, t), guard, "field_rest");

  const double r2 = rr * rr;
  const double r3 = r2 * rr;
  const double r5 = r3 * r2;
  const double z2r = r.z * r.z / r2;
  const double t2r = t * t / r2;

  // Transverse and longitudinal correction brackets; the two bracket
  // shapes differ only through (1 − 5z²/r²) vs (3 − 5z²/r²).
  const double bt = 0.25 * (3.0 * s.P / r2 * (1.0 - 5.0 * z2r) +
                            s.L * (3.0 * t2r * (1.0 - 5.0 * z2r) +
                                   3.0 * z2r - 1.0));
  const double bl = 0.25 * (3.0 * s.P / r2 * (3.0 - 5.0 * z2r) +
                            s.L * (3.0 * t2r * (3.0 - 5.0 * z2r) +
                                   3.0 * z2r - 1.0));

  EMField f;
  f.E = {r.x / r3 * (1.0 + bt), r.y / r3 * (1.0 + bt), r.z / r3 * (1.0 + bl)};
  // The L cross terms are fixed by the induction law ∇×H = ∂E/∂t applied
  // to the spreading quadrupole bracket; they also make the boosted field
  // coincide with the directly-written lab-frame decomposition.
  f.H = {r.z / r5 * (3.0 * r.x * s.mu + 1.5 * s.L * t * r.y),
         r.z / r5 * (3.0 * r.y * s.mu - 1.5 * s.L * t * r.x),
         s.mu * (3.0 * z2r - 1.0) / r3};
  return f;
}

Vec3 boost_E_to_lab(const EMField &rest, double beta) {
  const double g = 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
  return {g * (rest.E.x + beta * rest.H.y), g * (rest.E.y - beta * rest.H.x),
          rest.E.z};
}

Vec3 field_lab(const LGPacket &p, const Constants &c, const Vec3 &r, double t,
               double guard) {
  const BoostedCoords bc = boosted_coords(p.beam, r, t);
  const EMField rest =
      field_rest(p, c, {r.x, r.y, bc.Rz}, bc.Tz, guard);
  return boost_E_to_lab(rest, p.beam.beta);
}

LabFieldParts field_lab_decomposed(const LGPacket &p, const Constants &c,
                                   const Vec3 &r, double t, double guard) {
  const Scales s = scales_of(p, c);
  const double beta = p.beam.beta;
  const double g = p.beam.gamma();
  const BoostedCoords bc = boosted_coords(p.beam, r, t);
  guard_radius(bc.R, rho_bar(p, c, bc.Tz), guard, "field_lab_decomposed");

  const double R2 = bc.R * bc.R;
  const double R3 = R2 * bc.R;
  const double R5 = R3 * R2;
  const double rz2 = bc.Rz * bc.Rz / R2;
  const double tz2 = bc.Tz * bc.Tz / R2;

  LabFieldParts parts;
  parts.E_e = {g * r.x / R3, g * r.y / R3, bc.Rz / R3};
  parts.E_mu = {s.mu * 3.0 * beta * g * r.y * bc.Rz / R5,
                -s.mu * 3.0 * beta * g * r.x * bc.Rz / R5, 0.0};

  // Quadrupole brackets of the boosted field; the transverse one picks
  // up a −6βR_zT_z/R² cross term absent from the z-component.
  const double qt =
      0.25 * (3.0 * s.P / R2 * (1.0 - 5.0 * rz2) +
              s.L * (3.0 * tz2 * (1.0 - 5.0 * rz2) + 3.0 * rz2 -
                     6.0 * beta * bc.Rz * bc.Tz / R2 - 1.0));
  const double ql = 0.25 * (3.0 * s.P / R2 * (3.0 - 5.0 * rz2) +
                            s.L * (3.0 * tz2 * (3.0 - 5.0 * rz2) +
                                   3.0 * rz2 - 1.0));
  parts.E_Q = {g * r.x / R3 * qt, g * r.y / R3 * qt, bc.Rz / R3 * ql};
  return parts;
}

Vec3 field_lab_direct(const LGPacket &p, const Constants &c, const Vec3 &r,
                      double t, double guard) {
  return field_lab_decomposed(p, c, r, t, guard).total();
}

} // namespace spv
