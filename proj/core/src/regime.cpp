// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0

#include "spvortex/regime.hpp"

#include <cmath>
#include <sstream>

#include "spvortex/errors.hpp"

namespace spv {

const std::array<const char *, 10> kSecondOrderNames = {
    "mumu", "muQ0", "muQ1", "muQ2", "Q0Q0",
    "Q0Q1", "Q0Q2", "Q1Q1", "Q1Q2", "Q2Q2"};

EtaLedger compute_etas(const LGPacket &p, const Constants &c,
                       const Geometry &g, double theta, int order) {
  p.validate();
  c.validate();
  g.validate();
  EtaLedger e;
  e.lambda = sp_wavelength(g.d, p.beam.beta, theta, order);
  const double omega = 2.0 * kPi / e.lambda;
  e.heff = h_eff(p.beam, omega);

  e.eta_q = c.lambda_c / e.lambda;
  e.eta_q_energy = omega * c.lambda_c / p.beam.gamma();
  e.eta_mu = std::abs((double)p.ell) * c.lambda_c / e.lambda;
  e.eta_Q0 = (p.rho0 / e.heff) * (p.rho0 / e.heff);
  e.eta_Q1 = (double)p.ell * p.ell * c.lambda_c * c.lambda_c /
             (p.rho0 * p.rho0);
  e.eta_Q2 = (double)g.N * g.N * e.eta_Q1;

  const double first[4] = {e.eta_mu, e.eta_Q0, e.eta_Q1, e.eta_Q2};
  e.second[0] = e.eta_mu * e.eta_mu;
  e.second[1] = e.eta_mu * e.eta_Q0;
  e.second[2] = e.eta_mu * e.eta_Q1;
  e.second[3] = e.eta_mu * e.eta_Q2;
  e.second[4] = e.eta_Q0 * e.eta_Q0;
  e.second[5] = e.eta_Q0 * e.eta_Q1;
  e.second[6] = e.eta_Q0 * e.eta_Q2;
  e.second[7] = e.eta_Q1 * e.eta_Q1;
  e.second[8] = e.eta_Q1 * e.eta_Q2;
  e.second[9] = e.eta_Q2 * e.eta_Q2;

  static const char *names[4] = {"mu", "Q0", "Q1", "Q2"};
  int imax = 0;
  for (int i = 1; i < 4; ++i)
    if (first[i] > first[imax])
      imax = i;
  e.dominant = names[imax];
  return e;
}

const char *to_string(CheckStatus s) {
  switch (s) {
  case CheckStatus::pass:
    return "pass";
  case CheckStatus::warn:
    return "warn";
  case CheckStatus::fail:
    return "fail";
  }
  return "?";
}

bool ValidationReport::hard_fail() const {
  for (const RegimeCheck &c : checks)
    if (c.hard && c.status == CheckStatus::fail)
      return true;
  return false;
}

bool ValidationReport::any_warn() const {
  for (const RegimeCheck &c : checks)
    if (c.status != CheckStatus::pass)
      return true;
  return false;
}

namespace {

//! "much smaller than one" band: pass < 0.1, warn < 1, fail ≥ 1.
CheckStatus band_strong(double v) {
  if (v < 0.1)
    return CheckStatus::pass;
  if (v < 1.0)
    return CheckStatus::warn;
  return CheckStatus::fail;
}

//! "of order one or less" band: pass < 1, warn ≤ 3, fail > 3.
CheckStatus band_soft(double v) {
  if (v < 1.0)
    return CheckStatus::pass;
  if (v <= 3.0)
    return CheckStatus::warn;
  return CheckStatus::fail;
}

//! geometric band: pass ≤ 1, warn ≤ 1.2, fail > 1.2.
CheckStatus band_geometric(double v) {
  if (v <= 1.0)
    return CheckStatus::pass;
  if (v <= 1.2)
    return CheckStatus::warn;
  return CheckStatus::fail;
}

//! OAM band: pass < 0.9, warn ≤ 1, fail > 1.
CheckStatus band_oam(double v) {
  if (v < 0.9)
    return CheckStatus::pass;
  if (v <= 1.0)
    return CheckStatus::warn;
  return CheckStatus::fail;
}

RegimeCheck make(const std::string &name, double value, CheckStatus status,
                 bool hard, const std::string &detail) {
  RegimeCheck c;
  c.name = name;
  c.value = value;
  c.status = status;
  c.hard = hard;
  c.detail = detail;
  return c;
}

std::string ratio_detail(const char *expr, double v, const char *req) {
  std::ostringstream os;
  os << expr << " = " << v << " (" << req << ")";
  return os.str();
}

} // namespace

ValidationReport validate_regime(const LGPacket &p, const Constants &c,
                                 const Geometry &g, double theta, int order) {
  ValidationReport r;
  r.etas = compute_etas(p, c, g, theta, order);
  const EtaLedger &e = r.etas;

  // --- hard: recoil below every kept correction ------------------------
  const struct {
    const char *name;
    double eta;
  } firsts[4] = {{"quasi_mu", e.eta_mu},
                 {"quasi_Q0", e.eta_Q0},
                 {"quasi_Q1", e.eta_Q1},
                 {"quasi_Q2", e.eta_Q2}};
  for (const auto &f : firsts) {
    const double v = e.eta_q / f.eta;
    r.checks.push_back(make(f.name, v, band_strong(v), true,
                            ratio_detail("eta_q/eta_X", v,
                                         "recoil must stay well below the "
                                         "kept correction")));
  }

  // --- hard: geometric feasibility -------------------------------------
  if (!(g.h > p.rho0))
    throw parameter_error(
        "validate_regime: impact parameter h must exceed rho0");
  const double nmax = (p.beam.beta / std::abs((double)p.ell)) *
                      (p.rho0 / c.lambda_c) * (g.h / g.d) *
                      std::sqrt(1.0 - (p.rho0 / g.h) * (p.rho0 / g.h));
  r.n_max = nmax;
  {
    const double v = (double)g.N / nmax;
    r.checks.push_back(
        make("n_geometric", v, band_geometric(v), true,
             ratio_detail("N/N_max", v,
                          "grating length limited by packet spreading")));
  }
  {
    const double t_exit = (double)g.N * g.d / p.beam.beta;
    const double v = rho_bar(p, c, t_exit) / g.h;
    r.checks.push_back(
        make("packet_clearance", v, band_geometric(v), true,
             ratio_detail("rho_bar(exit)/h", v,
                          "spread packet must stay below flight height")));
  }

  // --- soft: second-order products vs recoil ---------------------------
  for (int i = 0; i < 10; ++i) {
    const double v = e.second[i] / e.eta_q;
    r.checks.push_back(
        make(std::string("second_") + kSecondOrderNames[i], v, band_soft(v),
             false,
             ratio_detail("eta_XY/eta_q", v,
                          "neglected second-order term vs recoil")));
  }

  // --- soft: OAM bound and parameter windows ----------------------------
  const double lmax = ell_max_real(e.lambda, c);
  const double sqrt_lmax = std::sqrt(lmax);
  {
    const double v = std::abs((double)p.ell) / lmax;
    r.checks.push_back(make("oam_upper", v, band_oam(v), false,
                            ratio_detail("|l|/sqrt(lambda/lambda_c)", v,
                                         "OAM below the kinematic maximum")));
  }
  {
    const double v = e.heff / (lmax * p.rho0);
    r.checks.push_back(
        make("rho_window_lower", v, band_strong(v), false,
             ratio_detail("h_eff/(l_max*rho0)", v,
                          "packet radius large enough to resolve")));
  }
  {
    const double v = p.rho0 * sqrt_lmax / e.heff;
    r.checks.push_back(
        make("rho_window_upper", v, band_soft(v), false,
             ratio_detail("rho0*sqrt(l_max)/h_eff", v,
                          "packet radius below the evanescent scale")));
  }
  {
    const double v =
        std::abs((double)p.ell) * c.lambda_c * sqrt_lmax / p.rho0;
    r.checks.push_back(
        make("ell_window_lower", v, band_soft(v), false,
             ratio_detail("l*lambda_c*sqrt(l_max)/rho0", v,
                          "spreading not faster than the window allows")));
  }
  {
    const double v =
        p.rho0 / (std::abs((double)p.ell) * c.lambda_c * lmax);
    r.checks.push_back(
        make("ell_window_upper", v, band_strong(v), false,
             ratio_detail("rho0/(l*lambda_c*l_max)", v,
                          "diffraction time short enough to matter")));
  }
  {
    const double v = (double)g.N * std::abs((double)p.ell) * sqrt_lmax *
                     c.lambda_c / p.rho0;
    r.checks.push_back(
        make("n_window_upper", v, band_soft(v), false,
             ratio_detail("N*l*sqrt(l_max)*lambda_c/rho0", v,
                          "enhanced term still a perturbation")));
  }
  return r;
}

//=============================================================================
// Presets
//=============================================================================

const std::vector<ScenarioPreset> &presets() {
  static const std::vector<ScenarioPreset> list = [] {
    std::vector<ScenarioPreset> v;

    // Terahertz scenario: mm-period grating, moderately relativistic
    // beam, h at the optimal 1.5·h_eff for the π/2 line (1 mm emission).
    ScenarioPreset thz;
    thz.name = "thz";
    thz.description =
        "THz emission: d = 0.5 mm grating, beta = 0.5, l = 100 packet of "
        "300 nm radius, N = 30 strips, h at the 1.5 h_eff optimum";
    thz.packet.beam.beta = 0.5;
    thz.packet.rho0 = 3.0e-7;
    thz.packet.ell = 100;
    thz.geometry.d = 5.0e-4;
    thz.geometry.a = 2.5e-4;
    thz.geometry.N = 30;
    thz.geometry.h = 1.5 * h_eff(thz.packet.beam,
                                 sp_omega(thz.geometry.d,
                                          thz.packet.beam.beta, kPi / 2, 1));
    v.push_back(thz);

    // Infrared scenario: sub-micron grating; the spreading bound caps the
    // strip count at N_max = 7, so N = 3 keeps a safety margin.
    ScenarioPreset ir;
    ir.name = "ir";
    ir.description =
        "IR emission: d = 0.5 um grating, beta = 0.5, l = 100 packet of "
        "2 nm radius, N = 3 strips (spreading-limited), h at 1.5 h_eff";
    ir.packet.beam.beta = 0.5;
    ir.packet.rho0 = 2.0e-9;
    ir.packet.ell = 100;
    ir.geometry.d = 5.0e-7;
    ir.geometry.a = 2.5e-7;
    ir.geometry.N = 3;
    ir.geometry.h = 1.5 * h_eff(ir.packet.beam,
                                sp_omega(ir.geometry.d, ir.packet.beam.beta,
                                         kPi / 2, 1));
    v.push_back(ir);
    return v;
  }();
  return list;
}

const ScenarioPreset &preset_by_name(const std::string &name) {
  for (const ScenarioPreset &p : presets())
    if (p.name == name)
      return p;
  throw parameter_error("unknown preset: " + name +
                        " (available: thz, ir)");
}

} // namespace spv
