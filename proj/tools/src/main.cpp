// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0
//
// spvortex CLI: spectral and angular Smith-Purcell distributions of a
// vortex electron packet over a strip grating, with dipole/quadrupole
// corrections, line-width analysis and a feasibility validator.
//
// Every command writes a deterministic CSV plus a JSON sidecar (the
// sidecar embeds the full effective configuration and can be fed back
// via --config). Exit codes: 0 success, 2 configuration error (syntax
// errors carry line/column), 3 validator hard failure without --force,
// 4 numeric failure.

#include <clocale>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "spvortex/analysis.hpp"
#include "spvortex/errors.hpp"
#include "spvortex/packet.hpp"
#include "spvortex/radiation.hpp"
#include "spvortex/regime.hpp"
#include "spvortex/units.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace spv;

namespace {

//=============================================================================
// Errors and small helpers
//=============================================================================

//! Configuration problem: bad JSON syntax or invalid values (exit 2).
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10e", v);
  return buf;
}

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

//! Run fn(i) for i in [0, n) on the requested number of worker threads;
//! results must be written by index so the output is thread-count
//! independent. The first exception wins and is rethrown here.
void parallel_for(int n, int threads, const std::function<void(int)> &fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i)
      fn(i);
    return;
  }
  threads = std::min(threads, n);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (int i = t; i < n; i += threads)
          fn(i);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  for (std::thread &th : pool)
    th.join();
  for (const std::exception_ptr &e : errs)
    if (e)
      std::rethrow_exception(e);
}

//=============================================================================
// CSV and SVG writers
//=============================================================================

void write_csv(const fs::path &path, const std::vector<std::string> &header,
               const std::vector<std::vector<std::string>> &rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out)
    throw std::runtime_error("cannot open output file: " + path.string());
  for (size_t i = 0; i < header.size(); ++i)
    out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto &r : rows) {
    for (size_t i = 0; i < r.size(); ++i)
      out << (i ? "," : "") << r[i];
    out << "\n";
  }
}

//! Minimal deterministic line plot (no external dependencies).
void write_svg(const fs::path &path, const std::string &title,
               const std::string &xlabel, const std::string &ylabel,
               const std::vector<double> &xs, const std::vector<double> &ys) {
  if (xs.empty() || xs.size() != ys.size())
    return;
  const double W = 800, H = 500, ml = 75, mr = 25, mt = 35, mb = 55;
  double xmin = xs[0], xmax = xs[0], ymin = ys[0], ymax = ys[0];
  for (size_t i = 0; i < xs.size(); ++i) {
    xmin = std::min(xmin, xs[i]);
    xmax = std::max(xmax, xs[i]);
    ymin = std::min(ymin, ys[i]);
    ymax = std::max(ymax, ys[i]);
  }
  if (xmax == xmin) {
    xmax += 1.0;
    xmin -= 1.0;
  }
  if (ymax == ymin) {
    ymax += 1.0;
    ymin -= 1.0;
  }
  const auto X = [&](double x) {
    return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr);
  };
  const auto Y = [&](double y) {
    return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb);
  };
  char buf[128];
  std::ofstream out(path, std::ios::binary);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
      << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H
      << "\" fill=\"white\"/>\n";
  out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\""
      << (W - ml - mr) << "\" height=\"" << (H - mt - mb)
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  // ticks
  for (int t = 0; t <= 4; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 4.0;
    const double fy = ymin + (ymax - ymin) * t / 4.0;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" "
                  "text-anchor=\"middle\">%s</text>\n",
                  X(fx), H - mb + 18.0, fmt_g(fx).c_str());
    out << buf;
    std::snprintf(buf, sizeof(buf),
                  "<text x=\"%.1f\" y=\"%.1f\" font-size=\"12\" "
                  "text-anchor=\"end\">%s</text>\n",
                  ml - 6.0, Y(fy) + 4.0, fmt_g(fy).c_str());
    out << buf;
  }
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" "
         "points=\"";
  for (size_t i = 0; i < xs.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", X(xs[i]), Y(ys[i]));
    out << buf;
  }
  out << "\"/>\n";
  out << "<text x=\"" << (ml + (W - ml - mr) / 2) << "\" y=\"" << (mt - 12)
      << "\" font-size=\"14\" text-anchor=\"middle\">" << title
      << "</text>\n";
  out << "<text x=\"" << (ml + (W - ml - mr) / 2) << "\" y=\"" << (H - 12)
      << "\" font-size=\"13\" text-anchor=\"middle\">" << xlabel
      << "</text>\n";
  out << "<text x=\"18\" y=\"" << (mt + (H - mt - mb) / 2)
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 "
         "18 "
      << (mt + (H - mt - mb) / 2) << ")\">" << ylabel << "</text>\n";
  out << "</svg>\n";
}

//=============================================================================
// Configuration
//=============================================================================

struct RunConfig {
  LGPacket packet;
  Constants constants;
  Geometry geometry;
  double theta = kPi / 2;
  double phi = kPi / 2;
  TermMask mask = TermMask::leading();
  json terms_spec = "leading";
  bool per_strip = false;
  int order = 1;
  double guard = 1.0;
  json sections; //!< command-specific sections carried through
};

[[noreturn]] void bad_key(const std::string &path, const std::string &why) {
  throw config_error("config error at \"" + path + "\": " + why);
}

double jnum(const json &j, const std::string &path) {
  if (!j.is_number())
    bad_key(path, "expected a number");
  return j.get<double>();
}

int jint(const json &j, const std::string &path) {
  if (!j.is_number_integer())
    bad_key(path, "expected an integer");
  return j.get<int>();
}

TermMask parse_terms(const json &spec) {
  if (spec.is_string()) {
    const std::string s = spec.get<std::string>();
    if (s == "charge")
      return TermMask::charge();
    if (s == "leading")
      return TermMask::leading();
    if (s == "all")
      return TermMask::all();
    bad_key("terms", "unknown set \"" + s +
                         "\" (use charge, leading, all, or a name array)");
  }
  if (spec.is_array()) {
    TermMask m;
    for (const json &v : spec) {
      if (!v.is_string())
        bad_key("terms", "array entries must be term names");
      const std::string s = v.get<std::string>();
      bool found = false;
      for (int i = 0; i < kNumTerms; ++i)
        if (s == kTermNames[i]) {
          m.on[i] = true;
          found = true;
        }
      if (!found)
        bad_key("terms", "unknown term name \"" + s + "\"");
    }
    return m;
  }
  bad_key("terms", "expected a string or an array of term names");
}

void apply_preset(RunConfig &cfg, const std::string &name) {
  const ScenarioPreset &p = preset_by_name(name);
  cfg.packet = p.packet;
  cfg.constants = p.constants;
  cfg.geometry = p.geometry;
  cfg.theta = p.theta;
  cfg.phi = p.phi;
}

//! Report a JSON syntax error with 1-based line/column computed from the
//! byte offset in the parser exception.
[[noreturn]] void rethrow_parse_error(const std::string &text,
                                      const nlohmann::json::parse_error &e) {
  size_t byte = e.byte > 0 ? e.byte - 1 : 0;
  byte = std::min(byte, text.size());
  size_t line = 1, col = 1;
  for (size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  std::ostringstream os;
  os << "config parse error at line " << line << ", column " << col << ": "
     << e.what();
  throw config_error(os.str());
}

RunConfig load_config(const std::string &path) {
  RunConfig cfg;
  json j = json::object();
  if (!path.empty()) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
      throw config_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    try {
      j = json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
      rethrow_parse_error(text, e);
    }
    if (!j.is_object())
      throw config_error("config root must be a JSON object");
    // A sidecar produced by a previous run can be used directly.
    if (j.contains("command") && j.contains("config") &&
        j["config"].is_object())
      j = j["config"];
  }

  if (j.contains("preset")) {
    if (!j["preset"].is_string())
      bad_key("preset", "expected a preset name string");
    apply_preset(cfg, j["preset"].get<std::string>());
  }
  if (j.contains("beam")) {
    const json &b = j["beam"];
    if (b.contains("beta"))
      cfg.packet.beam.beta = jnum(b["beta"], "beam.beta");
  }
  if (j.contains("packet")) {
    const json &p = j["packet"];
    if (p.contains("rho0"))
      cfg.packet.rho0 = jnum(p["rho0"], "packet.rho0");
    if (p.contains("ell"))
      cfg.packet.ell = jint(p["ell"], "packet.ell");
    if (p.contains("n"))
      cfg.packet.n = jint(p["n"], "packet.n");
  }
  if (j.contains("constants")) {
    const json &c = j["constants"];
    if (c.contains("lambda_c"))
      cfg.constants.lambda_c = jnum(c["lambda_c"], "constants.lambda_c");
  }
  if (j.contains("geometry")) {
    const json &g = j["geometry"];
    if (g.contains("d"))
      cfg.geometry.d = jnum(g["d"], "geometry.d");
    if (g.contains("a"))
      cfg.geometry.a = jnum(g["a"], "geometry.a");
    if (g.contains("N"))
      cfg.geometry.N = jint(g["N"], "geometry.N");
    if (g.contains("h"))
      cfg.geometry.h = jnum(g["h"], "geometry.h");
  }
  if (j.contains("observation")) {
    const json &o = j["observation"];
    if (o.contains("theta_deg"))
      cfg.theta = deg_to_rad(jnum(o["theta_deg"], "observation.theta_deg"));
    if (o.contains("phi_deg"))
      cfg.phi = deg_to_rad(jnum(o["phi_deg"], "observation.phi_deg"));
  }
  if (j.contains("terms")) {
    cfg.terms_spec = j["terms"];
    cfg.mask = parse_terms(cfg.terms_spec);
  }
  if (j.contains("per_strip")) {
    if (!j["per_strip"].is_boolean())
      bad_key("per_strip", "expected true or false");
    cfg.per_strip = j["per_strip"].get<bool>();
  }
  if (j.contains("order"))
    cfg.order = jint(j["order"], "order");
  if (j.contains("guard"))
    cfg.guard = jnum(j["guard"], "guard");

  cfg.sections = json::object();
  for (const char *sec : {"spectrum", "angular", "nscan", "polar_shift"})
    if (j.contains(sec)) {
      if (!j[sec].is_object())
        bad_key(sec, "expected an object");
      cfg.sections[sec] = j[sec];
    }

  // Surface invalid values now, as configuration errors.
  try {
    cfg.constants.validate();
    cfg.packet.validate();
    cfg.geometry.validate();
  } catch (const std::exception &e) {
    throw config_error(e.what());
  }
  if (!(cfg.theta > 0.0) || !(cfg.theta < kPi))
    throw config_error("observation.theta_deg must lie strictly in (0, 180)");
  if (cfg.order < 1)
    throw config_error("order must be >= 1");
  return cfg;
}

json effective_config(const RunConfig &cfg) {
  json j;
  j["beam"] = {{"beta", cfg.packet.beam.beta}};
  j["packet"] = {
      {"rho0", cfg.packet.rho0}, {"ell", cfg.packet.ell}, {"n", cfg.packet.n}};
  j["constants"] = {{"lambda_c", cfg.constants.lambda_c}};
  j["geometry"] = {{"d", cfg.geometry.d},
                   {"a", cfg.geometry.a},
                   {"N", cfg.geometry.N},
                   {"h", cfg.geometry.h}};
  j["observation"] = {{"theta_deg", rad_to_deg(cfg.theta)},
                      {"phi_deg", rad_to_deg(cfg.phi)}};
  j["terms"] = cfg.terms_spec;
  j["per_strip"] = cfg.per_strip;
  j["order"] = cfg.order;
  j["guard"] = cfg.guard;
  for (auto &item : cfg.sections.items())
    j[item.key()] = item.value();
  return j;
}

void write_sidecar(const fs::path &path, const std::string &command,
                   const RunConfig &cfg, const json &outputs,
                   const json &summary) {
  json j;
  j["command"] = command;
  j["config"] = effective_config(cfg);
  j["outputs"] = outputs;
  j["summary"] = summary;
  std::ofstream out(path, std::ios::binary);
  out << j.dump(2) << "\n";
}

//=============================================================================
// Validator gate
//=============================================================================

void print_report(const ValidationReport &rep) {
  std::printf("regime validation: lambda = %s m, h_eff = %s m, N_max = %s, "
              "dominant correction = %s\n",
              fmt_g(rep.etas.lambda).c_str(), fmt_g(rep.etas.heff).c_str(),
              fmt_g(rep.n_max).c_str(), rep.etas.dominant.c_str());
  for (const RegimeCheck &c : rep.checks)
    std::printf("  [%s]%s %-18s %s\n", to_string(c.status),
                c.hard ? " [hard]" : "       ", c.name.c_str(),
                c.detail.c_str());
}

//! Run the validator before a physics command; exit 3 on a hard failure
//! unless --force was given.
void gate_or_exit(const RunConfig &cfg, bool force) {
  const ValidationReport rep = validate_regime(
      cfg.packet, cfg.constants, cfg.geometry, cfg.theta, cfg.order);
  if (rep.hard_fail()) {
    std::fprintf(stderr,
                 "regime validator: hard failure (multipole expansion not "
                 "trustworthy at these parameters)\n");
    for (const RegimeCheck &c : rep.checks)
      if (c.hard && c.status == CheckStatus::fail)
        std::fprintf(stderr, "  [fail] [hard] %s: %s\n", c.name.c_str(),
                     c.detail.c_str());
    if (!force) {
      std::fprintf(stderr, "use --force to run anyway\n");
      std::exit(3);
    }
    std::fprintf(stderr, "--force given: continuing\n");
  }
}

json etas_to_json(const EtaLedger &e) {
  json j;
  j["lambda"] = e.lambda;
  j["heff"] = e.heff;
  j["eta_q"] = e.eta_q;
  j["eta_q_energy"] = e.eta_q_energy;
  j["eta_mu"] = e.eta_mu;
  j["eta_Q0"] = e.eta_Q0;
  j["eta_Q1"] = e.eta_Q1;
  j["eta_Q2"] = e.eta_Q2;
  json sec;
  for (int i = 0; i < 10; ++i)
    sec[kSecondOrderNames[i]] = e.second[i];
  j["second"] = sec;
  j["dominant"] = e.dominant;
  return j;
}

//=============================================================================
// Commands
//=============================================================================

int cmd_validate(const RunConfig &cfg, const fs::path &out, bool force,
                 bool /*svg*/) {
  const ValidationReport rep = validate_regime(
      cfg.packet, cfg.constants, cfg.geometry, cfg.theta, cfg.order);
  print_report(rep);

  std::vector<std::vector<std::string>> rows;
  for (const RegimeCheck &c : rep.checks)
    rows.push_back({c.name, fmt(c.value), to_string(c.status),
                    c.hard ? "1" : "0"});
  write_csv(out / "validate.csv", {"check", "value", "status", "hard"}, rows);

  json checks = json::array();
  for (const RegimeCheck &c : rep.checks)
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"status", to_string(c.status)},
                      {"hard", c.hard}});
  json summary;
  summary["etas"] = etas_to_json(rep.etas);
  summary["n_max"] = rep.n_max;
  summary["checks"] = checks;
  summary["hard_fail"] = rep.hard_fail();
  write_sidecar(out / "validate.json", "validate", cfg,
                {{"csv", "validate.csv"}}, summary);

  if (rep.hard_fail() && !force) {
    std::fprintf(stderr, "regime validator: hard failure; use --force to "
                         "accept the parameters anyway\n");
    return 3;
  }
  return 0;
}

int cmd_spectrum(const RunConfig &cfg, const fs::path &out, bool force,
                 bool svg, int threads) {
  gate_or_exit(cfg, force);
  const double w1 =
      sp_omega(cfg.geometry.d, cfg.packet.beam.beta, cfg.theta, cfg.order);
  const double half_window = 2.5 / (double)cfg.geometry.N;
  json sec = cfg.sections.contains("spectrum") ? cfg.sections["spectrum"]
                                               : json::object();
  const double wmin = sec.contains("omega_min")
                          ? jnum(sec["omega_min"], "spectrum.omega_min")
                          : w1 * std::max(1.0 - half_window, 0.05);
  const double wmax = sec.contains("omega_max")
                          ? jnum(sec["omega_max"], "spectrum.omega_max")
                          : w1 * (1.0 + half_window);
  const int points =
      sec.contains("points") ? jint(sec["points"], "spectrum.points") : 801;
  if (!(wmax > wmin) || points < 2)
    throw config_error("spectrum: need omega_max > omega_min and points >= 2");

  const double scale = cfg.per_strip ? 1.0 / cfg.geometry.N : 1.0;
  std::vector<std::vector<std::string>> rows(points);
  std::vector<double> xs(points), ys(points);
  parallel_for(points, threads, [&](int i) {
    const double w = wmin + (wmax - wmin) * i / (points - 1);
    const SpectralTerms t = spectral_terms(cfg.packet, cfg.constants,
                                           cfg.geometry, cfg.theta, cfg.phi,
                                           w);
    const double total = t.sum(cfg.mask) * scale;
    std::vector<std::string> row;
    row.reserve(3 + kNumTerms);
    row.push_back(fmt(w));
    row.push_back(fmt(omega_to_thz(w)));
    row.push_back(fmt(total));
    for (int k = 0; k < kNumTerms; ++k)
      row.push_back(fmt(t.term[k] * scale));
    rows[i] = std::move(row);
    xs[i] = omega_to_thz(w);
    ys[i] = total;
  });

  std::vector<std::string> header = {"omega_inv_m", "omega_thz", "dW_total"};
  for (int k = 0; k < kNumTerms; ++k)
    header.push_back(std::string("dW_") + kTermNames[k]);
  write_csv(out / "spectrum.csv", header, rows);

  int ipeak = 0;
  for (int i = 1; i < points; ++i)
    if (ys[i] > ys[ipeak])
      ipeak = i;

  RunConfig eff = cfg;
  eff.sections["spectrum"] = {
      {"omega_min", wmin}, {"omega_max", wmax}, {"points", points}};
  json outputs = {{"csv", "spectrum.csv"}};
  if (svg) {
    write_svg(out / "spectrum.svg", "spectral density",
              "omega [10^12 rad/s]", "dW/(domega dOmega)", xs, ys);
    outputs["svg"] = "spectrum.svg";
  }
  json summary;
  summary["omega_resonance"] = w1;
  summary["omega_peak"] = wmin + (wmax - wmin) * ipeak / (points - 1);
  summary["peak_value"] = ys[ipeak];
  summary["points"] = points;
  write_sidecar(out / "spectrum.json", "spectrum", eff, outputs, summary);
  std::printf("spectrum: %d points on [%s, %s] 1/m -> %s\n", points,
              fmt_g(wmin).c_str(), fmt_g(wmax).c_str(),
              (out / "spectrum.csv").string().c_str());
  return 0;
}

int cmd_angular(const RunConfig &cfg, const fs::path &out, bool force,
                bool svg, int threads) {
  gate_or_exit(cfg, force);
  json sec = cfg.sections.contains("angular") ? cfg.sections["angular"]
                                              : json::object();
  const double th_lo = deg_to_rad(
      sec.contains("theta_min_deg")
          ? jnum(sec["theta_min_deg"], "angular.theta_min_deg")
          : 5.0);
  const double th_hi = deg_to_rad(
      sec.contains("theta_max_deg")
          ? jnum(sec["theta_max_deg"], "angular.theta_max_deg")
          : 175.0);
  const int points =
      sec.contains("points") ? jint(sec["points"], "angular.points") : 341;
  if (!(th_hi > th_lo) || points < 2)
    throw config_error(
        "angular: need theta_max_deg > theta_min_deg and points >= 2");

  const bool use_emu = cfg.mask[STerm::emu];
  const bool use_eQ1 = cfg.mask[STerm::eQ1];
  const bool use_eQ2 = cfg.mask[STerm::eQ2];
  std::vector<std::vector<std::string>> rows(points);
  std::vector<double> xs(points), ys(points);
  parallel_for(points, threads, [&](int i) {
    const double th = th_lo + (th_hi - th_lo) * i / (points - 1);
    const double w1 =
        sp_omega(cfg.geometry.d, cfg.packet.beam.beta, th, cfg.order);
    const double ee =
        angular_ee(cfg.packet.beam, cfg.geometry, th, cfg.phi, cfg.order);
    const double emu =
        angular_emu(cfg.packet.beam, cfg.geometry, cfg.constants,
                    cfg.packet.ell, th, cfg.phi, cfg.order);
    const double eq1 = angular_eQ1(cfg.packet, cfg.constants, cfg.geometry,
                                   th, cfg.phi, cfg.order);
    const double eq2 = angular_eQ2(cfg.packet, cfg.constants, cfg.geometry,
                                   th, cfg.phi, cfg.order);
    double total = ee;
    if (use_emu)
      total += emu;
    if (use_eQ1)
      total += eq1;
    if (use_eQ2)
      total += eq2;
    rows[i] = {fmt(th),  fmt(rad_to_deg(th)), fmt(w1), fmt(ee),
               fmt(emu), fmt(eq1),            fmt(eq2), fmt(total)};
    xs[i] = rad_to_deg(th);
    ys[i] = total;
  });
  write_csv(out / "angular.csv",
            {"theta_rad", "theta_deg", "omega_res_inv_m", "ang_ee", "ang_emu",
             "ang_eQ1", "ang_eQ2", "ang_total"},
            rows);

  int ipeak = 0;
  for (int i = 1; i < points; ++i)
    if (ys[i] > ys[ipeak])
      ipeak = i;

  RunConfig eff = cfg;
  eff.sections["angular"] = {{"theta_min_deg", rad_to_deg(th_lo)},
                             {"theta_max_deg", rad_to_deg(th_hi)},
                             {"points", points}};
  json outputs = {{"csv", "angular.csv"}};
  if (svg) {
    write_svg(out / "angular.svg", "angular density (delta-line limit)",
              "theta [deg]", "dW/dOmega", xs, ys);
    outputs["svg"] = "angular.svg";
  }
  json summary;
  summary["theta_peak_deg"] = xs[ipeak];
  summary["peak_value"] = ys[ipeak];
  summary["points"] = points;
  write_sidecar(out / "angular.json", "angular", eff, outputs, summary);
  std::printf("angular: %d points on [%.3f, %.3f] deg -> %s\n", points,
              rad_to_deg(th_lo), rad_to_deg(th_hi),
              (out / "angular.csv").string().c_str());
  return 0;
}

int cmd_fwhm(const RunConfig &cfg, const fs::path &out, bool force,
             bool svg) {
  gate_or_exit(cfg, force);
  struct Model {
    const char *name;
    TermMask mask;
  };
  const Model models[3] = {{"charge", TermMask::charge()},
                           {"leading", TermMask::leading()},
                           {"all", TermMask::all()}};
  double width_charge = 0.0;
  std::vector<std::vector<std::string>> rows;
  json jrows = json::array();
  for (const Model &m : models) {
    const FwhmResult r = line_fwhm(cfg.packet, cfg.constants, cfg.geometry,
                                   cfg.theta, cfg.phi, m.mask, cfg.order);
    const double width = r.width();
    if (std::string(m.name) == "charge")
      width_charge = width;
    const double change_pct =
        width_charge > 0.0 ? (width / width_charge - 1.0) * 100.0 : 0.0;
    rows.push_back({m.name, fmt(r.omega_peak), fmt(r.omega_lo),
                    fmt(r.omega_hi), fmt(width), fmt(omega_to_thz(width)),
                    fmt(change_pct)});
    jrows.push_back({{"model", m.name},
                     {"omega_peak", r.omega_peak},
                     {"delta_omega", width},
                     {"delta_omega_thz", omega_to_thz(width)},
                     {"width_change_pct", change_pct}});
    std::printf("fwhm[%s]: delta_omega = %s THz (%+.4f%% vs charge)\n",
                m.name, fmt_g(omega_to_thz(width)).c_str(), change_pct);
  }
  write_csv(out / "fwhm.csv",
            {"model", "omega_peak_inv_m", "omega_lo_inv_m", "omega_hi_inv_m",
             "delta_omega_inv_m", "delta_omega_thz", "width_change_pct"},
            rows);

  json outputs = {{"csv", "fwhm.csv"}};
  if (svg) {
    // Plot the leading-terms line shape across the scan window.
    const double w1 =
        sp_omega(cfg.geometry.d, cfg.packet.beam.beta, cfg.theta, cfg.order);
    const double hw = 2.5 / (double)cfg.geometry.N;
    const int n = 301;
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
      const double w = w1 * (1.0 - hw) + w1 * 2.0 * hw * i / (n - 1);
      xs[i] = omega_to_thz(w);
      ys[i] = spectral_density(cfg.packet, cfg.constants, cfg.geometry,
                               cfg.theta, cfg.phi, w, TermMask::leading());
    }
    write_svg(out / "fwhm.svg", "emission line", "omega [10^12 rad/s]",
              "dW/(domega dOmega)", xs, ys);
    outputs["svg"] = "fwhm.svg";
  }
  json summary;
  summary["rows"] = jrows;
  write_sidecar(out / "fwhm.json", "fwhm", cfg, outputs, summary);
  return 0;
}

int cmd_nscan(const RunConfig &cfg, const fs::path &out, bool force,
              bool svg, int threads) {
  gate_or_exit(cfg, force);
  json sec =
      cfg.sections.contains("nscan") ? cfg.sections["nscan"] : json::object();
  const int n_lo = sec.contains("n_min") ? jint(sec["n_min"], "nscan.n_min")
                                         : 100;
  const int n_hi = sec.contains("n_max") ? jint(sec["n_max"], "nscan.n_max")
                                         : 700;
  const int points =
      sec.contains("points") ? jint(sec["points"], "nscan.points") : 25;
  if (n_lo < 1 || n_hi <= n_lo || points < 2)
    throw config_error("nscan: need 1 <= n_min < n_max and points >= 2");

  // Log-spaced strip counts, unique and sorted.
  std::vector<int> Ns;
  for (int i = 0; i < points; ++i) {
    const double t = (double)i / (points - 1);
    const int N = (int)std::lround(
        std::exp(std::log((double)n_lo) +
                 t * (std::log((double)n_hi) - std::log((double)n_lo))));
    if (Ns.empty() || N > Ns.back())
      Ns.push_back(N);
  }

  const int n = (int)Ns.size();
  std::vector<std::vector<std::string>> rows(n);
  std::vector<double> xs(n), ys(n);
  parallel_for(n, threads, [&](int i) {
    Geometry g = cfg.geometry;
    g.N = Ns[i];
    const double ee =
        angular_ee(cfg.packet.beam, g, cfg.theta, cfg.phi, cfg.order);
    const double eq2 = angular_eQ2(cfg.packet, cfg.constants, g, cfg.theta,
                                   cfg.phi, cfg.order);
    rows[i] = {std::to_string(Ns[i]), fmt(ee), fmt(eq2), fmt(eq2 / ee)};
    xs[i] = std::log10((double)Ns[i]);
    ys[i] = std::log10(std::fabs(eq2));
  });
  write_csv(out / "nscan.csv",
            {"N", "angular_ee", "angular_eQ2", "ratio_eQ2_ee"}, rows);

  // Least-squares log-log slopes over the scan.
  const auto slope = [&](const std::function<double(int)> &val) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
      const double lx = std::log((double)Ns[i]);
      const double ly = std::log(std::fabs(val(i)));
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  std::vector<double> ee_vals(n), eq2_vals(n);
  for (int i = 0; i < n; ++i) {
    Geometry g = cfg.geometry;
    g.N = Ns[i];
    ee_vals[i] = angular_ee(cfg.packet.beam, g, cfg.theta, cfg.phi, cfg.order);
    eq2_vals[i] =
        angular_eQ2(cfg.packet, cfg.constants, g, cfg.theta, cfg.phi,
                    cfg.order);
  }
  const double slope_ee = slope([&](int i) { return ee_vals[i]; });
  const double slope_eq2 = slope([&](int i) { return eq2_vals[i]; });

  RunConfig eff = cfg;
  eff.sections["nscan"] = {
      {"n_min", n_lo}, {"n_max", n_hi}, {"points", points}};
  json outputs = {{"csv", "nscan.csv"}};
  if (svg) {
    write_svg(out / "nscan.svg", "quadrupole enhancement vs strip count",
              "log10 N", "log10 |angular_eQ2|", xs, ys);
    outputs["svg"] = "nscan.svg";
  }
  json summary;
  summary["slope_ee"] = slope_ee;
  summary["slope_eQ2"] = slope_eq2;
  summary["n_values"] = Ns;
  write_sidecar(out / "nscan.json", "nscan", eff, outputs, summary);
  std::printf("nscan: N in [%d, %d], log-log slopes ee = %.4f, eQ2 = %.4f\n",
              n_lo, n_hi, slope_ee, slope_eq2);
  return 0;
}

int cmd_polar_shift(const RunConfig &cfg, const fs::path &out, bool force,
                    bool svg) {
  gate_or_exit(cfg, force);
  json sec = cfg.sections.contains("polar_shift")
                 ? cfg.sections["polar_shift"]
                 : json::object();
  std::vector<int> Ns;
  if (sec.contains("n_values")) {
    if (!sec["n_values"].is_array())
      bad_key("polar_shift.n_values", "expected an array of integers");
    for (const json &v : sec["n_values"])
      Ns.push_back(jint(v, "polar_shift.n_values[]"));
  } else {
    Ns = {cfg.geometry.N};
  }

  std::vector<std::vector<std::string>> rows;
  json jrows = json::array();
  for (int N : Ns) {
    Geometry g = cfg.geometry;
    g.N = N;
    const PolarShift s = polar_shift(cfg.packet, cfg.constants, g);
    rows.push_back({std::to_string(N), fmt(rad_to_deg(s.theta_e)),
                    fmt(rad_to_deg(s.delta_analytic)),
                    fmt(rad_to_deg(s.delta_numeric)),
                    fmt(rad_to_deg(s.theta_numeric))});
    jrows.push_back({{"N", N},
                     {"theta_e_deg", rad_to_deg(s.theta_e)},
                     {"delta_analytic_deg", rad_to_deg(s.delta_analytic)},
                     {"delta_numeric_deg", rad_to_deg(s.delta_numeric)},
                     {"theta_numeric_deg", rad_to_deg(s.theta_numeric)}});
    std::printf("polar-shift[N=%d]: theta_e = %.4f deg, delta_analytic = "
                "%.4f deg, delta_numeric = %.4f deg\n",
                N, rad_to_deg(s.theta_e), rad_to_deg(s.delta_analytic),
                rad_to_deg(s.delta_numeric));
  }
  write_csv(out / "polar_shift.csv",
            {"N", "theta_e_deg", "delta_analytic_deg", "delta_numeric_deg",
             "theta_numeric_deg"},
            rows);

  RunConfig eff = cfg;
  json jn = json::array();
  for (int N : Ns)
    jn.push_back(N);
  eff.sections["polar_shift"] = {{"n_values", jn}};
  json outputs = {{"csv", "polar_shift.csv"}};
  if (svg) {
    std::vector<double> xs, ys;
    for (size_t i = 0; i < Ns.size(); ++i) {
      xs.push_back((double)Ns[i]);
      ys.push_back(jrows[i]["delta_numeric_deg"].get<double>());
    }
    write_svg(out / "polar_shift.svg", "quadrupole polar shift", "N",
              "delta theta [deg]", xs, ys);
    outputs["svg"] = "polar_shift.svg";
  }
  json summary;
  summary["rows"] = jrows;
  write_sidecar(out / "polar_shift.json", "polar-shift", eff, outputs,
                summary);
  return 0;
}

int cmd_presets(const fs::path &out) {
  std::vector<std::vector<std::string>> rows;
  json jrows = json::array();
  for (const ScenarioPreset &p : presets()) {
    rows.push_back({p.name, fmt(p.packet.beam.beta), fmt(p.geometry.d),
                    fmt(p.geometry.a), std::to_string(p.geometry.N),
                    fmt(p.geometry.h), fmt(p.packet.rho0),
                    std::to_string(p.packet.ell), fmt(rad_to_deg(p.theta)),
                    fmt(rad_to_deg(p.phi))});
    jrows.push_back({{"name", p.name},
                     {"description", p.description},
                     {"beta", p.packet.beam.beta},
                     {"d", p.geometry.d},
                     {"a", p.geometry.a},
                     {"N", p.geometry.N},
                     {"h", p.geometry.h},
                     {"rho0", p.packet.rho0},
                     {"ell", p.packet.ell},
                     {"theta_deg", rad_to_deg(p.theta)},
                     {"phi_deg", rad_to_deg(p.phi)}});
    std::printf("%-4s %s\n", p.name.c_str(), p.description.c_str());
  }
  write_csv(out / "presets.csv",
            {"name", "beta", "d", "a", "N", "h", "rho0", "ell", "theta_deg",
             "phi_deg"},
            rows);
  json j;
  j["command"] = "presets";
  j["presets"] = jrows;
  std::ofstream f(out / "presets.json", std::ios::binary);
  f << j.dump(2) << "\n";
  return 0;
}

} // namespace

//=============================================================================
// main
//=============================================================================

int main(int argc, char **argv) {
  std::setlocale(LC_ALL, "C");

  CLI::App app{"Smith-Purcell radiation from vortex (Laguerre-Gaussian) "
               "electron packets over an ideally conducting strip grating"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = ".";
  bool force = false;
  bool svg = false;
  int threads = 1;
  if (const char *env = std::getenv("SPVORTEX_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0)
      threads = v;
  }

  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_dir, "Output directory (created if missing)");
  app.add_flag("--force", force,
               "Proceed even if the regime validator hard-fails");
  app.add_flag("--svg", svg, "Also write an SVG plot per command");
  app.add_option("--threads", threads,
                 "Worker threads (default: $SPVORTEX_THREADS or 1)");

  CLI::App *s_spectrum = app.add_subcommand(
      "spectrum", "Spectral density scan across the emission line");
  CLI::App *s_angular = app.add_subcommand(
      "angular", "Angular densities in the delta-line limit");
  CLI::App *s_fwhm = app.add_subcommand(
      "fwhm", "Line width (FWHM) for charge / leading / all term sets");
  CLI::App *s_nscan = app.add_subcommand(
      "nscan", "Strip-count scan of the angular densities");
  CLI::App *s_polar = app.add_subcommand(
      "polar-shift", "Quadrupole shift of the optimal polar angle");
  CLI::App *s_validate = app.add_subcommand(
      "validate", "Feasibility checks and the eta ledger");
  CLI::App *s_presets =
      app.add_subcommand("presets", "List built-in scenario presets");

  CLI11_PARSE(app, argc, argv);

  try {
    const fs::path out(out_dir);
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec)
      throw std::runtime_error("cannot create output directory: " +
                               out.string());

    if (s_presets->parsed())
      return cmd_presets(out);

    const RunConfig cfg = load_config(config_path);
    if (threads < 1)
      threads = 1;

    if (s_validate->parsed())
      return cmd_validate(cfg, out, force, svg);
    if (s_spectrum->parsed())
      return cmd_spectrum(cfg, out, force, svg, threads);
    if (s_angular->parsed())
      return cmd_angular(cfg, out, force, svg, threads);
    if (s_fwhm->parsed())
      return cmd_fwhm(cfg, out, force, svg);
    if (s_nscan->parsed())
      return cmd_nscan(cfg, out, force, svg, threads);
    if (s_polar->parsed())
      return cmd_polar_shift(cfg, out, force, svg);
    std::fprintf(stderr, "no command selected\n");
    return 1;
  } catch (const config_error &e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const parameter_error &e) {
    std::fprintf(stderr, "configuration error: %s\n", e.what());
    return 2;
  } catch (const regime_error &e) {
    std::fprintf(stderr, "regime error: %s\n", e.what());
    return 2;
  } catch (const numeric_error &e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 4;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
