// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0
//
// Real-space electromagnetic field of the packet, to first order in the
// multipole expansion: rest-frame closed forms (charge + magnetic dipole
// + electric quadrupole), the Lorentz boost to the lab frame, and the
// lab-frame closed forms split into the three physical parts.

#pragma once

#include "spvortex/packet.hpp"
#include "spvortex/units.hpp"

namespace spv {

//! E and H at one point (rest frame keeps both; the lab-frame API
//! returns E only — the surface-current method never needs lab H).
struct EMField {
  Vec3 E, H;
};

//! Lab-frame field split into charge, magnetic-dipole and
//! electric-quadrupole contributions; their sum is the total field.
struct LabFieldParts {
  Vec3 E_e, E_mu, E_Q;
  Vec3 total() const { return E_e + E_mu + E_Q; }
};

//! Boosted coordinates entering every lab-frame closed form.
struct BoostedCoords {
  double Rz = 0.0; //!< γ(z − βt)
  double Tz = 0.0; //!< γ(t − βz)
  double R = 0.0;  //!< √(x² + y² + Rz²)
};

BoostedCoords boosted_coords(const Beam &beam, const Vec3 &r, double t);

//! Rest-frame field of the packet at (r, t): Coulomb part, ρ̄₀² and
//! ℓ²λ_c²/ρ̄₀² quadrupole corrections, and the dipole H terms.
//! Throws numeric_error when |r| < guard·10·ρ̄(t): the multipole
//! expansion converges in powers of ρ̄/|r|, so points within a few
//! spreading radii of the packet center are refused.
EMField field_rest(const LGPacket &p, const Constants &c, const Vec3 &r,
                   double t, double guard = 1.0);

//! Lorentz transform of the electric field to the lab frame:
//! E_lab = (γ(Ex + βHy), γ(Ey − βHx), Ez).
Vec3 boost_E_to_lab(const EMField &rest, double beta);

//! Lab-frame field obtained by boosting field_rest evaluated at the
//! boosted coordinates (x, y, Rz; Tz).
Vec3 field_lab(const LGPacket &p, const Constants &c, const Vec3 &r, double t,
               double guard = 1.0);

//! Lab-frame field from the directly-written closed form (same result
//! as field_lab to rounding; kept separate as a consistency anchor).
Vec3 field_lab_direct(const LGPacket &p, const Constants &c, const Vec3 &r,
                      double t, double guard = 1.0);

//! Charge / dipole / quadrupole split of field_lab_direct.
LabFieldParts field_lab_decomposed(const LGPacket &p, const Constants &c,
                                   const Vec3 &r, double t,
                                   double guard = 1.0);

} // namespace spv
