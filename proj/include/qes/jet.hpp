// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

// Second-order forward-mode jets: (f, f', f'') propagated through arithmetic.

#pragma once

#include <cmath>

namespace qes {

struct Jet {
  double v = 0.0;
  double d = 0.0;
  double dd = 0.0;

  static constexpr Jet constant(double c) { return {c, 0.0, 0.0}; }
  static constexpr Jet variable(double x) { return {x, 1.0, 0.0}; }
};

inline Jet operator+(Jet a, Jet b) { return {a.v + b.v, a.d + b.d, a.dd + b.dd}; }
inline Jet operator-(Jet a, Jet b) { return {a.v - b.v, a.d - b.d, a.dd - b.dd}; }
inline Jet operator-(Jet a) { return {-a.v, -a.d, -a.dd}; }
inline Jet operator*(Jet a, Jet b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2.0 * a.d * b.d + a.v * b.dd};
}
inline Jet operator*(double s, Jet a) { return {s * a.v, s * a.d, s * a.dd}; }
inline Jet operator*(Jet a, double s) { return s * a; }
inline Jet operator+(Jet a, double s) { return {a.v + s, a.d, a.dd}; }
inline Jet operator-(Jet a, double s) { return {a.v - s, a.d, a.dd}; }

inline Jet reciprocal(Jet a) {
  const double inv = 1.0 / a.v;
  return {inv, -a.d * inv * inv, (2.0 * a.d * a.d * inv - a.dd) * inv * inv};
}
inline Jet operator/(Jet a, Jet b) { return a * reciprocal(b); }
inline Jet operator/(Jet a, double s) { return {a.v / s, a.d / s, a.dd / s}; }

inline Jet exp(Jet a) {
  const double e = std::exp(a.v);
  return {e, e * a.d, e * (a.dd + a.d * a.d)};
}

/// a^p for a.v > 0 and real p.
inline Jet pow(Jet a, double p) {
  if (p == 0.0) return Jet::constant(1.0);
  const double f = std::pow(a.v, p);
  const double f1 = p * std::pow(a.v, p - 1.0);
  const double f2 = p * (p - 1.0) * std::pow(a.v, p - 2.0);
  return {f, f1 * a.d, f2 * a.d * a.d + f1 * a.dd};
}

}  // namespace qes
