// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0
//
// Microbenchmarks of the hot paths: one spectral-density point, the
// symbolic-table Fourier evaluation, the grating form factor, and a full
// FWHM measurement at N = 50.

#include <benchmark/benchmark.h>

#include "spvortex/analysis.hpp"
#include "spvortex/fourier.hpp"
#include "spvortex/radiation.hpp"

namespace {

using namespace spv;

LGPacket table_packet() {
  LGPacket p;
  p.beam.beta = 0.5;
  p.rho0 = 3.0e-7;
  p.ell = 1000;
  return p;
}

Geometry table_geometry() {
  Geometry g;
  g.d = 1.0e-3;
  g.a = 0.5e-3;
  g.N = 50;
  g.h = 3.9e-4;
  return g;
}

void BM_spectral_point(benchmark::State &state) {
  const LGPacket p = table_packet();
  const Constants c;
  const Geometry g = table_geometry();
  const double w1 = sp_omega(g.d, p.beam.beta, kPi / 2, 1);
  const TermMask mask = TermMask::leading();
  double w = w1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        spectral_density(p, c, g, kPi / 2, kPi / 2, w, mask));
    w = (w == w1) ? w1 * 1.0001 : w1;
  }
}
BENCHMARK(BM_spectral_point);

void BM_quadrupole_table_eval(benchmark::State &state) {
  const LGPacket p = table_packet();
  const Constants c;
  const double w1 = sp_omega(1.0e-3, 0.5, kPi / 2, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        fourier_quadrupole(0.3 * w1, -3.9e-4, w1, p, c));
  }
}
BENCHMARK(BM_quadrupole_table_eval);

void BM_form_factor(benchmark::State &state) {
  const Geometry g = table_geometry();
  double th1 = 2.0 * kPi / g.d * 1.000173;
  for (auto _ : state) {
    benchmark::DoNotOptimize(form_factor(th1, g));
  }
}
BENCHMARK(BM_form_factor);

void BM_fwhm_n50(benchmark::State &state) {
  const LGPacket p = table_packet();
  Constants c;
  c.lambda_c = 3.9e-13;
  const Geometry g = table_geometry();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        line_fwhm(p, c, g, kPi / 2, kPi / 2, TermMask::leading()));
  }
}
BENCHMARK(BM_fwhm_n50);

} // namespace

BENCHMARK_MAIN();
