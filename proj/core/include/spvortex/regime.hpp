// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0
//
// Feasibility validator for the multipole expansion.
//
// Every run is characterized by a ledger of small dimensionless
// parameters: the quantum-recoil scale η_q = λ_c/λ, the first-order
// correction scales η_μ, η_Q0, η_Q1, η_Q2, and their ten pairwise
// products (the neglected second-order terms). The validator turns the
// ordering assumptions behind the expansion into explicit pass / warn /
// fail checks; hard failures make the CLI refuse to run without --force.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "spvortex/packet.hpp"
#include "spvortex/units.hpp"

namespace spv {

//=============================================================================
// η ledger
//=============================================================================

//! Names of the ten second-order products, in ledger order.
extern const std::array<const char *, 10> kSecondOrderNames;

struct EtaLedger {
  double lambda = 0.0; //!< emitted wavelength at the observation angle [m]
  double heff = 0.0;   //!< evanescent decay scale βγ/ω [m]

  double eta_q = 0.0;        //!< λ_c/λ : photon-momentum recoil
  double eta_q_energy = 0.0; //!< ωλ_c/γ : photon-energy recoil (info only)
  double eta_mu = 0.0;       //!< |ℓ|λ_c/λ : magnetic-dipole scale
  double eta_Q0 = 0.0;       //!< (ρ̄₀/h_eff)² : static quadrupole scale
  double eta_Q1 = 0.0;       //!< ℓ²λ_c²/ρ̄₀² : spreading quadrupole scale
  double eta_Q2 = 0.0;       //!< N²·η_Q1 : dynamically enhanced scale

  //! Products {μμ, μQ0, μQ1, μQ2, Q0Q0, Q0Q1, Q0Q2, Q1Q1, Q1Q2, Q2Q2}.
  std::array<double, 10> second{};

  //! Largest first-order correction: "mu", "Q0", "Q1" or "Q2".
  std::string dominant;
};

EtaLedger compute_etas(const LGPacket &p, const Constants &c,
                       const Geometry &g, double theta, int order = 1);

//=============================================================================
// Validation
//=============================================================================

enum class CheckStatus { pass, warn, fail };

const char *to_string(CheckStatus s);

struct RegimeCheck {
  std::string name;
  double value = 0.0; //!< dimensionless ratio under test (smaller = better)
  CheckStatus status = CheckStatus::pass;
  bool hard = false;  //!< hard checks gate the CLI (exit 3 without --force)
  std::string detail;
};

struct ValidationReport {
  EtaLedger etas;
  double n_max = 0.0; //!< grating-length bound on N (unfloored)
  std::vector<RegimeCheck> checks;

  bool hard_fail() const;
  bool any_warn() const;
};

//! Run every feasibility check at the given observation angle.
//!
//! Hard checks (expansion or geometry genuinely broken):
//!   quasi_mu, quasi_Q0, quasi_Q1, quasi_Q2 — recoil must stay well below
//!     each kept correction (η_q/η_X strongly below one);
//!   n_geometric — N must not exceed the spreading-limited bound N_max;
//!   packet_clearance — the spread packet at grating exit must stay
//!     below the flight height (ρ̄(Nd/β)/h ≤ 1).
//! Soft checks (accuracy degradations, reported but not gating):
//!   the ten second-order products vs η_q, the OAM bound |ℓ|/√(λ/λ_c),
//!   and the parameter windows linking ρ̄₀, ℓ, N, h_eff and ℓ_max.
ValidationReport validate_regime(const LGPacket &p, const Constants &c,
                                 const Geometry &g, double theta,
                                 int order = 1);

//=============================================================================
// Presets
//=============================================================================

struct ScenarioPreset {
  std::string name;
  std::string description;
  LGPacket packet;
  Constants constants;
  Geometry geometry;
  double theta = kPi / 2;
  double phi = kPi / 2;
};

//! Built-in validated scenarios ("thz", "ir").
const std::vector<ScenarioPreset> &presets();

//! Look up a preset by name; throws parameter_error if unknown.
const ScenarioPreset &preset_by_name(const std::string &name);

} // namespace spv
