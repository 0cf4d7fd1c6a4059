// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

// Fractional power singular potentials V_N(r) = sum_p s_p a_p r^{-p/N} for
// N = 2 (square-root family) and N = 3 (third-root family), the effective
// potential of the Schrodinger-like radial Dirac equation, and the quantum
// number bookkeeping shared by the solvers.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qes/errors.hpp"

namespace qes {

inline constexpr double kDefaultGridMin = 1e-2;
inline constexpr double kDefaultGridMax = 50.0;
inline constexpr int kDefaultGridCount = 2000;

/// Relativistic state label (n_r, kappa) with the fermion mass.
struct DiracState {
  int n_r = 0;
  int kappa = 1;
  double mu = 1.0;

  /// n_r + 2(kappa+1); the energy of the N=2 family depends only on this.
  int n_prime() const { return n_r + 2 * (kappa + 1); }
  /// n_r + 3(kappa+1); the N=3 analogue.
  int n_star() const { return n_r + 3 * (kappa + 1); }
  /// n_r + N(kappa+1) for either family.
  int principal(int family) const { return n_r + family * (kappa + 1); }

  void validate() const {
    if (n_r < 0) throw DomainError("n_r must be non-negative");
    if (kappa < 1) throw DomainError("kappa must be a positive integer");
    if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("mu must be positive");
  }
};

/// Non-relativistic state label (n_r, ell); units 2m = hbar = 1.
struct SchrodingerState {
  int n_r = 0;
  int ell = 0;

  /// n = n_r + 2 ell + 2.
  int principal() const { return n_r + 2 * ell + 2; }

  void validate() const {
    if (n_r < 0) throw DomainError("n_r must be non-negative");
    if (ell < 0) throw DomainError("ell must be non-negative");
  }
};

/// Spectroscopic label used by the reference tables: kappa = 1 -> s1/2,
/// kappa = 2 -> p3/2, ... with the leading digit n_r + 1.
inline std::string spectroscopic_label(const DiracState& s) {
  static constexpr const char* kLetters = "spdfghiklmnoqrtuv";
  const int idx = s.kappa - 1;
  const char letter = idx < 17 ? kLetters[idx] : '?';
  return std::to_string(s.n_r + 1) + letter + std::to_string(2 * s.kappa - 1) + "/2";
}

/// Coefficients a_1..a_{2N-1} of V_N, stored as positive magnitudes.
///
/// The sign pattern is applied by eval_potential: the first N terms
/// alternate starting with a minus sign, the remaining N-1 are added.
/// Constrained coefficients (p > N) may be unset until a solver fills them.
struct PotentialSpec {
  int family = 2;
  std::vector<std::optional<double>> coeffs;

  static PotentialSpec square_root(double a1, double a2,
                                   std::optional<double> a3 = std::nullopt) {
    return PotentialSpec{2, {a1, a2, a3}};
  }

  static PotentialSpec third_root(double a1, double a2, double a3,
                                  std::optional<double> a4 = std::nullopt,
                                  std::optional<double> a5 = std::nullopt) {
    return PotentialSpec{3, {a1, a2, a3, a4, a5}};
  }

  int count() const { return 2 * family - 1; }

  void validate() const {
    if (family != 2 && family != 3) throw DomainError("family must be 2 or 3");
    if (static_cast<int>(coeffs.size()) != count())
      throw DomainError("coefficient count must equal 2N-1");
    for (int p = 1; p <= family; ++p) {
      const auto& a = coeffs[p - 1];
      if (!a || !(*a > 0.0))
        throw DomainError("free coefficients a_1..a_N must be positive");
    }
  }

  bool complete() const {
    for (const auto& a : coeffs)
      if (!a) return false;
    return true;
  }

  /// a_p (1-based); throws if unset.
  double coeff(int p) const {
    if (p < 1 || p > count()) throw DomainError("coefficient index out of range");
    const auto& a = coeffs[p - 1];
    if (!a)
      throw PreconditionError("potential coefficient a_" + std::to_string(p) +
                              " is not set");
    return *a;
  }

  /// Sign applied to a_p in V_N.
  int sign(int p) const {
    if (p > family) return +1;
    return (p % 2 == 1) ? -1 : +1;
  }

  /// a_p with its sign applied.
  double signed_coeff(int p) const { return sign(p) * coeff(p); }
};

/// r^{1/N} computed with the matching root function.
inline double fractional_root(double r, int family) {
  switch (family) {
    case 1: return r;
    case 2: return std::sqrt(r);
    case 3: return std::cbrt(r);
    default: return std::pow(r, 1.0 / family);
  }
}

inline double eval_potential(const PotentialSpec& spec, double r) {
  if (!(r > 0.0)) throw DomainError("potential evaluated at non-positive r");
  const double x = fractional_root(r, spec.family);
  const double inv_x = 1.0 / x;
  double v = 0.0;
  double inv_pow = 1.0;
  for (int p = 1; p <= spec.count(); ++p) {
    inv_pow *= inv_x;
    v += spec.signed_coeff(p) * inv_pow;
  }
  return v;
}

/// kappa(kappa+1)/r^2 + 2(mu+E) V_N(r).
inline double eval_effective_potential(const PotentialSpec& spec, const DiracState& state,
                                       double energy, double r) {
  if (!(r > 0.0)) throw DomainError("effective potential evaluated at non-positive r");
  const double k = state.kappa;
  return k * (k + 1.0) / (r * r) + 2.0 * (state.mu + energy) * eval_potential(spec, r);
}

/// Logarithmically spaced grid including both endpoints exactly.
inline std::vector<double> log_grid(double r_min, double r_max, int count) {
  if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max))
    throw DomainError("grid range must satisfy 0 < r_min < r_max");
  if (count < 2) throw DomainError("grid needs at least two points");
  std::vector<double> r(count);
  const double step = std::log(r_max / r_min) / (count - 1);
  for (int i = 0; i < count; ++i) r[i] = r_min * std::exp(step * i);
  r.front() = r_min;
  r.back() = r_max;
  return r;
}

inline std::vector<double> default_grid() {
  return log_grid(kDefaultGridMin, kDefaultGridMax, kDefaultGridCount);
}

inline std::vector<std::pair<double, double>> potential_grid(const PotentialSpec& spec,
                                                             const DiracState& state,
                                                             double energy, double r_min,
                                                             double r_max, int count) {
  std::vector<std::pair<double, double>> out;
  out.reserve(count);
  for (double r : log_grid(r_min, r_max, count))
    out.emplace_back(r, eval_effective_potential(spec, state, energy, r));
  return out;
}

}  // namespace qes
