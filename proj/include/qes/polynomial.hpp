// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

// Dense real polynomials stored as ascending coefficient vectors
// (c[0] + c[1] x + ... + c[n] x^n), with companion-matrix root finding.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qes/errors.hpp"

namespace qes::poly {

using Coeffs = std::vector<double>;

/// Horner evaluation.
inline double eval(std::span<const double> c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline std::complex<double> eval(std::span<const double> c, std::complex<double> x) {
  std::complex<double> acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

inline Coeffs derivative(std::span<const double> c) {
  if (c.size() <= 1) return {0.0};
  Coeffs d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
  return d;
}

/// Drops trailing (highest-order) zeros, keeping at least one coefficient.
inline Coeffs trimmed(Coeffs c) {
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  return c;
}

inline Coeffs multiply(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) return {};
  Coeffs out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

/// Monic polynomial prod_i (x - roots[i]).
inline Coeffs from_roots(std::span<const double> roots) {
  Coeffs c{1.0};
  for (double r : roots) {
    Coeffs next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = std::move(next);
  }
  return c;
}

/// All complex roots via eigenvalues of the companion matrix.
inline std::vector<std::complex<double>> roots(std::span<const double> coeffs) {
  Coeffs c = trimmed(Coeffs(coeffs.begin(), coeffs.end()));
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1) return {};
  if (c.back() == 0.0) throw DomainError("zero polynomial has no roots");
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -c[i] / c[n];
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  if (solver.info() != Eigen::Success) throw SolverFailure("companion eigen solve failed", NAN);
  std::vector<std::complex<double>> out(n);
  for (int i = 0; i < n; ++i) out[i] = solver.eigenvalues()[i];
  return out;
}

/// Newton refinement of a real root; returns the input when Newton diverges.
inline double polish(std::span<const double> c, double x, int steps = 8) {
  const Coeffs d = derivative(c);
  double best = x;
  double best_val = std::abs(eval(c, x));
  for (int i = 0; i < steps; ++i) {
    const double f = eval(c, x);
    const double fp = eval(d, x);
    if (fp == 0.0 || !std::isfinite(f)) break;
    x -= f / fp;
    const double v = std::abs(eval(c, x));
    if (v < best_val) {
      best = x;
      best_val = v;
    }
    if (v == 0.0) break;
  }
  return best;
}

/// Real roots of the companion spectrum, Newton polished and sorted.
/// A root counts as real when |Im z| <= imag_tol * (1 + |z|).
inline std::vector<double> real_roots(std::span<const double> c, double imag_tol = 1e-7) {
  std::vector<double> out;
  for (const auto& z : roots(c)) {
    if (std::abs(z.imag()) <= imag_tol * (1.0 + std::abs(z))) out.push_back(polish(c, z.real()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Roots in (0, inf), sorted ascending, duplicates merged.
inline std::vector<double> positive_real_roots(std::span<const double> c,
                                               double imag_tol = 1e-7) {
  std::vector<double> out;
  for (double x : real_roots(c, imag_tol))
    if (x > 0.0 && (out.empty() || std::abs(x - out.back()) > 1e-12 * (1.0 + x)))
      out.push_back(x);
  return out;
}

/// Cauchy upper bound on the modulus of every root.
inline double cauchy_bound(std::span<const double> coeffs) {
  Coeffs c = trimmed(Coeffs(coeffs.begin(), coeffs.end()));
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, std::abs(c[i] / c.back()));
  return 1.0 + m;
}

/// Positive roots located by a sign-change scan of (0, upper] with the given
/// step, each refined by bisection and Newton.
inline std::vector<double> bracketed_positive_roots(std::span<const double> c, double step,
                                                    double upper) {
  std::vector<double> out;
  double x0 = 0.0;
  double f0 = eval(c, x0);
  const long steps = static_cast<long>(std::ceil(upper / step));
  for (long i = 1; i <= steps; ++i) {
    const double x1 = std::min(upper, i * step);
    const double f1 = eval(c, x1);
    if (f1 == 0.0) {
      out.push_back(x1);
    } else if (f0 != 0.0 && std::signbit(f0) != std::signbit(f1)) {
      double lo = x0, hi = x1, flo = f0;
      for (int it = 0; it < 200 && hi - lo > 4 * std::numeric_limits<double>::epsilon() * hi;
           ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eval(c, mid);
        if (std::signbit(fm) == std::signbit(flo)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.push_back(polish(c, 0.5 * (lo + hi), 3));
    }
    x0 = x1;
    f0 = f1;
  }
  return out;
}

}  // namespace qes::poly
