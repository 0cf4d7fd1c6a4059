// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

// Closed-form QES radial functions
//
//   F(r) = C * x^power * y(x) * exp(w(x)),   x = r^{1/N},
//
// with y and w real polynomials, differentiated exactly through jets.

#pragma once

#include <cmath>
#include <vector>

#include "qes/errors.hpp"
#include "qes/jet.hpp"
#include "qes/normalize.hpp"
#include "qes/polynomial.hpp"

namespace qes {

struct ClosedForm {
  int root_index = 2;       // N
  double power = 0.0;       // exponent of x
  poly::Coeffs poly{1.0};   // y(x), ascending
  poly::Coeffs exponent;    // w(x), ascending
  double scale = 1.0;       // C

  /// F and its first two r-derivatives.
  Jet jet(double r) const {
    if (!(r > 0.0)) throw DomainError("closed form evaluated at non-positive r");
    const double n = root_index;
    const double x = std::pow(r, 1.0 / n);
    const Jet X = Jet::variable(x);
    Jet y = Jet::constant(0.0);
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) y = y * X + *it;
    Jet w = Jet::constant(0.0);
    for (auto it = exponent.rbegin(); it != exponent.rend(); ++it) w = w * X + *it;
    const Jet fx = scale * (pow(X, power) * y * exp(w));
    // chain rule through x(r)
    const double x1 = x / (n * r);
    const double x2 = (1.0 / n) * (1.0 / n - 1.0) * x / (r * r);
    return {fx.v, fx.d * x1, fx.dd * x1 * x1 + fx.d * x2};
  }

  double operator()(double r) const { return jet(r).v; }

  ClosedForm scaled(double c) const {
    ClosedForm out = *this;
    out.scale *= c;
    return out;
  }
};

/// Lower spinor component G = (F' + kappa F / r) / (mu + E) of the equally
/// mixed radial Dirac system, with its first two derivatives.
inline Jet lower_component(const ClosedForm& f, int kappa, double mu_plus_e, double r) {
  const Jet F = f.jet(r);
  const Jet R = Jet::variable(r);
  const Jet Fp{F.d, F.dd, 0.0};
  // third derivative of F is not needed for G and G'
  const Jet g = (Fp + static_cast<double>(kappa) * (F / R)) / mu_plus_e;
  return {g.v, g.d, std::nan("")};
}

struct WavefunctionGrid {
  std::vector<double> r;
  std::vector<double> F;
  std::vector<double> G;  // empty for the Schrodinger case
  double constant = 1.0;
  NormReport norm;
  ClosedForm form;  // already scaled by constant
};

/// Normalizes F and samples (F, G) with int (F^2 + G^2) dr = 1.
inline WavefunctionGrid sample_dirac(const ClosedForm& shape, int kappa, double mu_plus_e,
                                     const std::vector<double>& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw DomainError("grid must be strictly positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("grid must be ascending");
  }
  auto density = [&](double r) {
    const double f = shape(r);
    const double g = lower_component(shape, kappa, mu_plus_e, r).v;
    return f * f + g * g;
  };
  WavefunctionGrid out;
  out.norm = normalize(density, shape.root_index);
  out.constant = out.norm.constant;
  out.form = shape.scaled(out.constant);
  out.r = grid;
  out.F.reserve(grid.size());
  out.G.reserve(grid.size());
  for (double r : grid) {
    out.F.push_back(out.form(r));
    out.G.push_back(lower_component(out.form, kappa, mu_plus_e, r).v);
  }
  return out;
}

/// Normalizes phi with int phi^2 dr = 1 and samples it.
inline WavefunctionGrid sample_schrodinger(const ClosedForm& shape,
                                           const std::vector<double>& grid) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0)) throw DomainError("grid must be strictly positive");
    if (i > 0 && !(grid[i] > grid[i - 1])) throw DomainError("grid must be ascending");
  }
  auto density = [&](double r) {
    const double f = shape(r);
    return f * f;
  };
  WavefunctionGrid out;
  out.norm = normalize(density, shape.root_index);
  out.constant = out.norm.constant;
  out.form = shape.scaled(out.constant);
  out.r = grid;
  out.F.reserve(grid.size());
  for (double r : grid) out.F.push_back(out.form(r));
  return out;
}

/// Number of sign changes of the samples, ignoring exact zeros.
inline int sign_changes(const std::vector<double>& v) {
  int count = 0;
  int last = 0;
  for (double x : v) {
    const int s = (x > 0.0) - (x < 0.0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace qes
