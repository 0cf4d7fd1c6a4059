// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

// Normalization integrals of radial densities on (0, inf). Integration runs in
// x = r^{1/N}, where QES densities are entire functions of x, so a fixed
// Gauss-Legendre rule converges to round-off.

#pragma once

#include <algorithm>
#include <cmath>

#include "qes/errors.hpp"
#include "qes/quadrature.hpp"

namespace qes {

inline constexpr double kTailRatio = 1e-16;
inline constexpr int kNormPanels = 4;

struct NormReport {
  double integral = 0.0;    // int_0^R rho dr before scaling
  double constant = 1.0;    // 1/sqrt(integral)
  double cutoff = 0.0;      // R
  double tail_bound = 0.0;  // estimate of int_R^inf rho dr / integral
  int nodes = quad::kDefaultNodes;
  int panels = kNormPanels;
};

namespace detail {

inline double power_of_root(double x, int family) {
  switch (family) {
    case 1: return x;
    case 2: return x * x;
    case 3: return x * x * x;
    default: return std::pow(x, family);
  }
}

}  // namespace detail

/// int_0^R f(r) dr evaluated in x = r^{1/N}.
template <class F>
double radial_integral(F&& f, int family, double cutoff) {
  const double xmax = std::pow(cutoff, 1.0 / family);
  auto integrand = [&](double x) {
    if (x <= 0.0) return 0.0;
    const double r = detail::power_of_root(x, family);
    return f(r) * family * std::pow(x, family - 1);
  };
  return quad::integrate(integrand, 0.0, xmax, kNormPanels);
}

/// Finds R with density(R) below kTailRatio of the peak on a geometric scan in
/// x, then integrates. Throws InvariantViolation for a non-finite or
/// non-decaying density.
template <class D>
NormReport normalize(D&& density, int family) {
  if (family < 1) throw DomainError("family must be positive");
  auto h = [&](double x) {
    const double r = detail::power_of_root(x, family);
    return density(r) * family * std::pow(x, family - 1);
  };
  constexpr double kStart = 1e-3;
  constexpr double kGrowth = 1.02;
  constexpr double kLimit = 1e5;
  double peak = 0.0;
  double peak_x = kStart;
  double prev_x = kStart;
  double prev_h = h(kStart);
  double x = kStart;
  double cut_x = -1.0;
  double tail = 0.0;
  while (x < kLimit) {
    x *= kGrowth;
    const double hx = h(x);
    if (!std::isfinite(hx)) throw InvariantViolation("normalization density is not finite");
    if (hx > peak) {
      peak = hx;
      peak_x = x;
    }
    if (peak > 0.0 && x > peak_x && hx <= kTailRatio * peak && hx <= prev_h) {
      cut_x = x;
      const double slope = (hx > 0.0 && prev_h > 0.0) ? (std::log(prev_h) - std::log(hx)) / (x - prev_x)
                                                       : 0.0;
      tail = slope > 0.0 ? hx / slope : 0.0;
      break;
    }
    prev_x = x;
    prev_h = hx;
  }
  if (cut_x < 0.0 || !(peak > 0.0))
    throw InvariantViolation("normalization density does not decay");
  NormReport rep;
  rep.cutoff = detail::power_of_root(cut_x, family);
  rep.integral = radial_integral(density, family, rep.cutoff);
  if (!std::isfinite(rep.integral) || !(rep.integral > 0.0))
    throw InvariantViolation("normalization integral is not finite and positive");
  rep.tail_bound = tail / rep.integral;
  rep.constant = 1.0 / std::sqrt(rep.integral);
  return rep;
}

}  // namespace qes
