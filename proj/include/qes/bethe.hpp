// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

// Bethe ansatz equations of the form
//
//   sum_{j != i} 1/(x_i - x_j) = f(x_i),   f(x) = q x^2 + l x + c + d / x,
//
// solved by damped Newton with multistart.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qes/errors.hpp"
#include "qes/polynomial.hpp"

namespace qes {

inline constexpr double kBetheTolerance = 1e-12;
inline constexpr int kBetheMaxIterations = 200;
inline constexpr double kDistinctTolerance = 1e-8;

struct BetheField {
  double quad = 0.0;
  double lin = 0.0;
  double cst = 0.0;
  double inv = 0.0;

  double operator()(double x) const { return (quad * x + lin) * x + cst + inv / x; }
  double derivative(double x) const { return 2.0 * quad * x + lin - inv / (x * x); }

  /// x f(x) as an ascending polynomial; its roots solve the single-root case.
  poly::Coeffs times_x() const { return {inv, cst, lin, quad}; }
};

/// Residuals r_i = sum_{j!=i} 1/(x_i-x_j) - f(x_i).
inline std::vector<double> bethe_residuals(const BetheField& f, const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) s += 1.0 / (x[i] - x[j]);
    out[i] = s - f(x[i]);
  }
  return out;
}

inline double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

inline double bethe_max_residual(const BetheField& f, const std::vector<double>& x) {
  return max_abs(bethe_residuals(f, x));
}

/// Smallest pairwise separation relative to the larger magnitude.
inline double min_relative_gap(const std::vector<double>& x) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      g = std::min(g, std::abs(x[i] - x[j]) / std::max({std::abs(x[i]), std::abs(x[j]), 1e-300}));
  return g;
}

struct BetheResult {
  std::vector<double> roots;
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

/// Damped Newton from one seed; keeps every iterate positive.
inline BetheResult bethe_newton(const BetheField& f, std::vector<double> x,
                                double tol = kBetheTolerance, int max_iter = kBetheMaxIterations) {
  const int n = static_cast<int>(x.size());
  BetheResult res;
  std::vector<double> r = bethe_residuals(f, x);
  double norm = max_abs(r);
  for (int it = 0; it < max_iter && std::isfinite(norm); ++it) {
    res.iterations = it;
    if (norm <= tol) break;
    Eigen::MatrixXd J(n, n);
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) {
      double diag = -f.derivative(x[i]);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        const double t = 1.0 / ((x[i] - x[j]) * (x[i] - x[j]));
        J(i, j) = t;
        diag -= t;
      }
      J(i, i) = diag;
      rhs(i) = -r[i];
    }
    const Eigen::VectorXd dx = J.fullPivLu().solve(rhs);
    if (!dx.allFinite()) break;
    double step = 1.0;
    for (int i = 0; i < n; ++i)
      if (x[i] + dx(i) <= 0.0) step = std::min(step, 0.5 * x[i] / std::abs(dx(i)));
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      std::vector<double> trial(x);
      for (int i = 0; i < n; ++i) trial[i] += step * dx(i);
      const std::vector<double> tr = bethe_residuals(f, trial);
      const double tn = max_abs(tr);
      if (std::isfinite(tn) && tn < norm) {
        x = std::move(trial);
        r = tr;
        norm = tn;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  std::sort(x.begin(), x.end());
  res.roots = std::move(x);
  res.residual = bethe_max_residual(f, res.roots);
  res.converged = res.residual <= tol;
  return res;
}

/// Tries each seed in order and returns the first converged, positive,
/// pairwise-distinct solution. Throws SolverFailure with the best residual
/// otherwise.
inline BetheResult solve_bethe(const BetheField& f, const std::vector<std::vector<double>>& seeds,
                               double tol = kBetheTolerance) {
  double best = std::numeric_limits<double>::infinity();
  bool degenerate = false;
  for (const auto& seed : seeds) {
    if (seed.empty()) return BetheResult{{}, 0.0, 0, true};
    bool ok = true;
    for (double s : seed) ok = ok && s > 0.0 && std::isfinite(s);
    if (!ok) continue;
    BetheResult r = bethe_newton(f, seed, tol);
    if (std::isfinite(r.residual)) best = std::min(best, r.residual);
    if (!r.converged) continue;
    if (!(r.roots.front() > 0.0)) continue;
    if (min_relative_gap(r.roots) < kDistinctTolerance) {
      degenerate = true;
      continue;
    }
    return r;
  }
  if (degenerate)
    throw SolverFailure("Bethe roots collapsed to a degenerate pair", best);
  throw SolverFailure("no positive real Bethe root set found from " +
                          std::to_string(seeds.size()) + " seeds",
                      best);
}

/// Seeds spread geometrically around a centre, widened by (1 + 0.5 k).
inline std::vector<std::vector<double>> spread_seeds(double centre, int n, int count) {
  std::vector<std::vector<double>> out;
  for (int k = 0; k < count; ++k) {
    for (int sgn : {+1, -1}) {
      const double factor = 1.0 + sgn * 0.5 * k / (k + 1.0);
      std::vector<double> s(n);
      const double c = centre * factor;
      for (int i = 0; i < n; ++i) s[i] = c * std::pow(1.0 + 0.5 * (k + 1), (i - 0.5 * (n - 1)) / n);
      out.push_back(std::move(s));
      if (k == 0) break;
    }
  }
  return out;
}

}  // namespace qes
