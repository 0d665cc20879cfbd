// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>

namespace spv {

//! Real 3-vector. Minimal by design: the library only ever needs
//! component access, sums, scalings and dot products.
struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3 &o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3 &o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator-() const { return {-x, -y, -z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3 &operator+=(const Vec3 &o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  double dot(const Vec3 &o) const { return x * o.x + y * o.y + z * o.z; }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }
};

inline Vec3 operator*(double s, const Vec3 &v) { return v * s; }

//! Complex scalar over an arbitrary real-like type T (double or a dual
//! number). std::complex<T> formally requires a floating-point T, so a
//! tiny dedicated type keeps the templated evaluation paths well-defined.
template <class T> struct Cx {
  T re{}, im{};

  Cx() = default;
  Cx(const T &r) : re(r) {}
  Cx(const T &r, const T &i) : re(r), im(i) {}

  Cx operator+(const Cx &o) const { return {re + o.re, im + o.im}; }
  Cx operator-(const Cx &o) const { return {re - o.re, im - o.im}; }
  Cx operator-() const { return {-re, -im}; }
  Cx operator*(const Cx &o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Cx operator*(const T &s) const { return {re * s, im * s}; }
  Cx &operator+=(const Cx &o) {
    re = re + o.re;
    im = im + o.im;
    return *this;
  }
  friend Cx operator*(const T &s, const Cx &c) { return c * s; }
};

template <class T> Cx<T> conj(const Cx<T> &c) { return {c.re, -c.im}; }

//! Complex 3-vector over T, with the conjugate-on-the-right dot product
//! used by the interference terms: a · b* = Σ a_i b_i*.
template <class T> struct Vec3C {
  Cx<T> x{}, y{}, z{};

  Vec3C operator+(const Vec3C &o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3C operator*(const Cx<T> &s) const { return {x * s, y * s, z * s}; }
  Vec3C operator*(const T &s) const { return {x * s, y * s, z * s}; }
  Cx<T> dot_conj(const Vec3C &o) const {
    return x * conj(o.x) + y * conj(o.y) + z * conj(o.z);
  }
  T norm2() const {
    return x.re * x.re + x.im * x.im + y.re * y.re + y.im * y.im +
           z.re * z.re + z.im * z.im;
  }
};

using cplx = std::complex<double>;

//! Double-valued complex 3-vector for the public (non-templated) API.
struct Vec3c {
  cplx x{}, y{}, z{};

  Vec3c operator+(const Vec3c &o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3c operator-(const Vec3c &o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3c operator*(const cplx &s) const { return {x * s, y * s, z * s}; }
  cplx dot_conj(const Vec3c &o) const {
    return x * std::conj(o.x) + y * std::conj(o.y) + z * std::conj(o.z);
  }
  double norm2() const {
    return std::norm(x) + std::norm(y) + std::norm(z);
  }
};

inline Vec3c to_vec3c(const Vec3C<double> &v) {
  return {cplx(v.x.re, v.x.im), cplx(v.y.re, v.y.im), cplx(v.z.re, v.z.im)};
}

} // namespace spv
