// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>

namespace spv {

//! Forward-mode dual number: carries a value and the derivative with
//! respect to a single seed variable. Evaluating any templated routine
//! with Dual{x, 1} returns the exact (to rounding) derivative in .d —
//! no truncation error, unlike finite differences, which this library
//! keeps only as test oracles.
struct Dual {
  double v = 0.0; //!< value
  double d = 0.0; //!< derivative w.r.t. the seed variable

  Dual() = default;
  Dual(double value) : v(value), d(0.0) {}
  Dual(double value, double deriv) : v(value), d(deriv) {}

  Dual operator-() const { return {-v, -d}; }
  Dual operator+(const Dual &o) const { return {v + o.v, d + o.d}; }
  Dual operator-(const Dual &o) const { return {v - o.v, d - o.d}; }
  Dual operator*(const Dual &o) const { return {v * o.v, d * o.v + v * o.d}; }
  Dual operator/(const Dual &o) const {
    return {v / o.v, (d * o.v - v * o.d) / (o.v * o.v)};
  }
  Dual &operator+=(const Dual &o) {
    v += o.v;
    d += o.d;
    return *this;
  }
  Dual &operator*=(const Dual &o) { return *this = *this * o; }

  friend Dual operator+(double a, const Dual &b) { return Dual(a) + b; }
  friend Dual operator-(double a, const Dual &b) { return Dual(a) - b; }
  friend Dual operator*(double a, const Dual &b) { return Dual(a) * b; }
  friend Dual operator/(double a, const Dual &b) { return Dual(a) / b; }

  bool operator<(const Dual &o) const { return v < o.v; }
  bool operator>(const Dual &o) const { return v > o.v; }
};

inline double value_of(double x) { return x; }
inline double value_of(const Dual &x) { return x.v; }

inline Dual sqrt(const Dual &x) {
  const double s = std::sqrt(x.v);
  return {s, x.d / (2.0 * s)};
}
inline Dual exp(const Dual &x) {
  const double e = std::exp(x.v);
  return {e, x.d * e};
}
inline Dual sin(const Dual &x) { return {std::sin(x.v), x.d * std::cos(x.v)}; }
inline Dual cos(const Dual &x) { return {std::cos(x.v), -x.d * std::sin(x.v)}; }

//! Integer power with exact derivative; p may be negative.
inline Dual pow_int(const Dual &x, int p) {
  if (p == 0)
    return Dual(1.0);
  const double vp = std::pow(x.v, p);
  return {vp, p * std::pow(x.v, p - 1) * x.d};
}
inline double pow_int(double x, int p) { return std::pow(x, p); }

} // namespace spv
