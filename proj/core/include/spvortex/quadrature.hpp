// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>

#include "spvortex/errors.hpp"

namespace spv {

namespace detail {
inline double qnorm(double x) { return std::fabs(x); }
inline double qnorm(const std::complex<double> &x) { return std::abs(x); }
} // namespace detail

//! Adaptive Simpson quadrature on [a, b] with absolute tolerance.
//!
//! Works for real- and complex-valued integrands (anything with +, -,
//! scalar * and a norm overload above). The classic recursive scheme
//! with Richardson correction S2 + (S2 - S1)/15; the tolerance is split
//! between halves, giving a roughly uniform error density.
template <class F>
auto integrate_adaptive(F &&f, double a, double b, double abs_tol,
                        int max_depth = 48) -> decltype(f(a)) {
  using R = decltype(f(a));

  struct Impl {
    F &f;
    int max_depth;
    std::size_t evals = 0;

    R step(double a, double m, double b, const R &fa, const R &fm,
           const R &fb, const R &whole, double tol, int depth) {
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const R flm = f(lm), frm = f(rm);
      evals += 2;
      const double h6 = (b - a) / 12.0;
      const R left = (fa + 4.0 * flm + fm) * h6;
      const R right = (fm + 4.0 * frm + fb) * h6;
      const R s2 = left + right;
      const R err = s2 - whole;
      if (depth >= max_depth || detail::qnorm(err) <= 15.0 * tol)
        return s2 + err * (1.0 / 15.0);
      return step(a, lm, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
             step(m, rm, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
  };

  if (!(b > a))
    return R{};
  Impl impl{f, max_depth};
  const double m = 0.5 * (a + b);
  const R fa = f(a), fm = f(m), fb = f(b);
  const R whole = (fa + 4.0 * fm + fb) * ((b - a) / 6.0);
  return impl.step(a, m, b, fa, fm, fb, whole, abs_tol, 0);
}

//! Golden-section maximization of a unimodal function on [a, b].
//! Returns the abscissa of the maximum to within xtol.
template <class F>
double golden_section_max(F &&f, double a, double b, double xtol,
                          int max_iter = 200) {
  static const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;  // 0.618...
  static const double invphi2 = invphi * invphi;              // 0.382...
  double h = b - a;
  if (h <= xtol)
    return 0.5 * (a + b);
  double c = a + invphi2 * h, d = a + invphi * h;
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter && h > xtol; ++i) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      h = b - a;
      c = a + invphi2 * h;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      h = b - a;
      d = a + invphi * h;
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

//! Bisection root refinement of f on a sign-changing bracket [a, b].
template <class F>
double bisect_root(F &&f, double a, double b, double xtol_rel,
                   int max_iter = 200) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0)
    return a;
  if (fb == 0.0)
    return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw numeric_error("bisect_root: bracket does not change sign");
  for (int i = 0; i < max_iter; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0)
      return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
    if (std::fabs(b - a) <= xtol_rel * std::fabs(m))
      break;
  }
  return 0.5 * (a + b);
}

} // namespace spv
