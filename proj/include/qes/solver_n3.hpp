// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

// Third-root family
//   V_3 = -a1 r^{-1/3} + a2 r^{-2/3} - a3 r^{-1} + a4 r^{-4/3} + a5 r^{-5/3},
// with x = r^{1/3} and F = x^{3(kappa+1)} prod(x - x_m) exp(b3 x^3 + b2 x^2 + b1 x).

#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "qes/bethe.hpp"
#include "qes/closed_form.hpp"
#include "qes/errors.hpp"
#include "qes/oracle.hpp"
#include "qes/polynomial.hpp"
#include "qes/potential.hpp"
#include "qes/solver_n2.hpp"

namespace qes {

inline constexpr double kQuinticScanStep = 1e-3;
inline constexpr long kQuinticScanMaxSteps = 2'000'000;

struct ExponentN3 {
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;
};

struct QESSolutionN3 {
  DiracState state;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
  std::vector<double> energies;
  double E = 0.0;
  double p = 0.0;
  ExponentN3 b;
  std::vector<double> roots;
  double a4 = 0.0;
  double a5 = 0.0;
  double a4_printed = 0.0;  // general constraint as printed
  double a5_printed = 0.0;
  double identity = 0.0;          // 6 b3 n_r + 18 b3 (kappa+1) + 4 b1 b2 + 18 p a3
  double identity_printed = 0.0;  // same without the 6 b3 n_r term
  Diagnostics diagnostics;

  PotentialSpec potential() const { return PotentialSpec::third_root(a1, a2, a3, a4, a5); }
};

inline ExponentN3 b_coefficients(double E, const DiracState& state, double a1, double a2) {
  detail::check_energy(E, state.mu);
  const double k = detail::gap(E, state.mu);
  const double p = state.mu + E;
  ExponentN3 b;
  b.b3 = -k;
  b.b2 = 3.0 * p * a1 / (2.0 * k);
  b.b1 = -3.0 * p * a2 / k + 3.0 * p * p * a1 * a1 / (2.0 * k * k * k);
  return b;
}

/// n* k - 3 a1^3 p^3 / (2 k^4) + 3 a1 a2 p^2 / k^2 - 3 p a3.
inline double energy_residual_n3(double E, const DiracState& state, double a1, double a2,
                                 double a3) {
  detail::check_energy(E, state.mu);
  const double k = detail::gap(E, state.mu);
  const double p = state.mu + E;
  const double k2 = k * k;
  return state.n_star() * k - 3.0 * a1 * a1 * a1 * p * p * p / (2.0 * k2 * k2) +
         3.0 * a1 * a2 * p * p / k2 - 3.0 * p * a3;
}

/// 2 mu n* u^5 + (3 a1 a2 - 3 a1^3/(4mu) - 6 mu a3) u^4 + (3 a1 a2 - 3 a1^3/(2mu)) u^2
///   - 3 a1^3/(4mu).
inline poly::Coeffs energy_quintic_n3(const DiracState& state, double a1, double a2, double a3) {
  const double mu = state.mu;
  const double c = a1 * a1 * a1 / mu;
  return {-0.75 * c,
          0.0,
          3.0 * a1 * a2 - 1.5 * c,
          0.0,
          3.0 * a1 * a2 - 0.75 * c - 6.0 * mu * a3,
          2.0 * mu * state.n_star()};
}

/// Positive roots of the quintic: companion spectrum merged with a
/// sign-change scan of (0, Cauchy bound].
inline std::vector<double> quintic_positive_roots(const poly::Coeffs& c) {
  std::vector<double> all = poly::positive_real_roots(c);
  const double upper = poly::cauchy_bound(c);
  const double step = std::max(kQuinticScanStep, upper / kQuinticScanMaxSteps);
  for (double u : poly::bracketed_positive_roots(c, step, upper)) all.push_back(u);
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double u : all)
    if (out.empty() || std::abs(u - out.back()) > 1e-9 * (1.0 + u)) out.push_back(u);
  return out;
}

/// All admissible energies, ascending.
inline std::vector<double> solve_energy_n3(const DiracState& state, double a1, double a2,
                                           double a3) {
  state.validate();
  if (!(a1 > 0.0) || !(a2 > 0.0) || !(a3 > 0.0))
    throw DomainError("a1, a2 and a3 must be positive");
  std::vector<double> out;
  for (double u : quintic_positive_roots(energy_quintic_n3(state, a1, a2, a3))) {
    const double E = energy_from_u(u, state.mu);
    if (std::abs(E) < state.mu) out.push_back(E);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Right-hand side of sum_{s!=m} 1/(x_m - x_s) = -(3 b3 x^2 + 2 b2 x + b1 + (3 kappa + 2)/x).
inline BetheField bethe_field_n3(const DiracState& state, const ExponentN3& b) {
  return BetheField{-3.0 * b.b3, -2.0 * b.b2, -b.b1, -(3.0 * state.kappa + 2.0)};
}

/// a3 implied by the energy equation at (E, a1, a2).
inline double implied_a3_n3(double E, const DiracState& state, double a1, double a2) {
  const double p = state.mu + E;
  return (energy_residual_n3(E, state, a1, a2, 0.0)) / (3.0 * p);
}

inline OracleProblem oracle_problem_n3(const DiracState& state, double E, double a1, double a2) {
  const ExponentN3 b = b_coefficients(E, state, a1, a2);
  OracleProblem pb;
  pb.family = 3;
  pb.degree = state.n_r;
  pb.j = state.kappa;
  pb.c0 = E * E - state.mu * state.mu;
  pb.coupling = 2.0 * (state.mu + E);
  pb.free = {a1, a2, implied_a3_n3(E, state, a1, a2)};
  pb.exponent = {0.0, b.b1, b.b2, b.b3};
  return pb;
}

/// Positive Bethe roots. For n_r = 1 the smallest positive root of
/// 3 b3 x^3 + 2 b2 x^2 + b1 x + 3 kappa + 2 is taken; for larger n_r the
/// coefficient-matching solutions with positive roots seed Newton, smallest
/// root sum first.
inline std::vector<double> solve_bethe_roots_n3(const DiracState& state, double E, double a1,
                                                double a2, int* positive_sets = nullptr) {
  state.validate();
  const ExponentN3 b = b_coefficients(E, state, a1, a2);
  const BetheField f = bethe_field_n3(state, b);
  const int n = state.n_r;
  if (positive_sets) *positive_sets = n == 0 ? 1 : 0;
  if (n == 0) return {};
  if (n == 1) {
    const std::vector<double> cand = single_root_candidates(f);
    if (cand.empty()) throw SolverFailure("single-root cubic has no positive root", NAN);
    if (positive_sets) *positive_sets = static_cast<int>(cand.size());
    return {bethe_newton(f, {cand.front()}).roots.front()};
  }
  std::vector<std::vector<double>> seeds;
  try {
    const OracleResult orc = coefficient_oracle(oracle_problem_n3(state, E, a1, a2));
    if (positive_sets) *positive_sets = count_positive_solutions(orc);
    std::vector<std::pair<double, std::vector<double>>> pos;
    for (const auto& s : orc.solutions) {
      if (!s.all_positive) continue;
      std::vector<double> r = solution_roots(s);
      double sum = 0.0;
      for (double x : r) sum += x;
      pos.emplace_back(sum, std::move(r));
    }
    std::sort(pos.begin(), pos.end());
    for (auto& [sum, r] : pos) seeds.push_back(std::move(r));
  } catch (const OracleFailure&) {
  }
  const std::vector<double> single = single_root_candidates(f);
  const double centre = single.empty() ? 1.0 : single.front();
  for (auto& s : spread_seeds(centre, n, 8)) seeds.push_back(std::move(s));
  return solve_bethe(f, seeds).roots;
}

struct ConstrainedPair {
  double a4 = 0.0;
  double a5 = 0.0;
};

/// a4 = [b1^2/18 + b2 (2 n_r + 6 kappa + 5)/9 + b3 S1/3] / p
/// a5 = [b1 (n_r + 3 kappa + 2)/9 + b3 S2/3 + 2 b2 S1/9] / p
/// with S1 = sum x_m, S2 = sum x_m^2.
inline ConstrainedPair constrained_a4_a5(const DiracState& state, double E, double a1, double a2,
                                         const std::vector<double>& roots) {
  const ExponentN3 b = b_coefficients(E, state, a1, a2);
  const double p = state.mu + E;
  double s1 = 0.0, s2 = 0.0;
  for (double x : roots) {
    s1 += x;
    s2 += x * x;
  }
  const int n = state.n_r;
  const int k = state.kappa;
  ConstrainedPair out;
  out.a4 = (b.b1 * b.b1 / 18.0 + b.b2 * (2.0 * n + 6.0 * k + 5.0) / 9.0 + b.b3 * s1 / 3.0) / p;
  out.a5 = (b.b1 * (n + 3.0 * k + 2.0) / 9.0 + b.b3 * s2 / 3.0 + 2.0 * b.b2 * s1 / 9.0) / p;
  return out;
}

/// General constraint with the printed -2 b2 S1 / 9 term in a5.
inline ConstrainedPair printed_general_a4_a5(const DiracState& state, double E, double a1,
                                             double a2, const std::vector<double>& roots) {
  const ExponentN3 b = b_coefficients(E, state, a1, a2);
  const double p = state.mu + E;
  double s1 = 0.0;
  for (double x : roots) s1 += x;
  ConstrainedPair out = constrained_a4_a5(state, E, a1, a2, roots);
  out.a5 -= 4.0 * b.b2 * s1 / (9.0 * p);
  return out;
}

/// Ground-state constraint as printed: a4 carries an extra b3/3.
inline ConstrainedPair printed_ground_a4_a5(const DiracState& state, double E, double a1,
                                            double a2) {
  const ExponentN3 b = b_coefficients(E, state, a1, a2);
  const double p = state.mu + E;
  const int k = state.kappa;
  return {(b.b1 * b.b1 / 18.0 + b.b2 * (6.0 * k + 5.0) / 9.0 + b.b3 / 3.0) / p,
          b.b1 * (3.0 * k + 2.0) / (9.0 * p)};
}

/// First-excited-state constraint as printed.
inline ConstrainedPair printed_first_a4_a5(const DiracState& state, double E, double a1,
                                           double a2, double x1) {
  const ExponentN3 b = b_coefficients(E, state, a1, a2);
  const double p = state.mu + E;
  const int k = state.kappa;
  return {(b.b1 * b.b1 / 18.0 + b.b2 * (6.0 * k + 7.0) / 9.0 + b.b3 * x1 / 3.0) / p,
          (b.b1 * (k + 1.0) / 3.0 + b.b3 * x1 * x1 / 3.0 - 2.0 * b.b2 * x1 / 9.0) / p};
}

struct QuadraticIdentity {
  double value = 0.0;    // with the 6 b3 n_r term
  double printed = 0.0;  // without it
};

/// x^2 coefficient of the reduced equation after the energy condition.
inline QuadraticIdentity quadratic_identity(const DiracState& state, double E, double a1,
                                            double a2, double a3) {
  const ExponentN3 b = b_coefficients(E, state, a1, a2);
  const double p = state.mu + E;
  const double base = 18.0 * b.b3 * (state.kappa + 1.0) + 4.0 * b.b1 * b.b2 + 18.0 * p * a3;
  return {base + 6.0 * b.b3 * state.n_r, base};
}

inline ClosedForm closed_form_n3(const QESSolutionN3& sol) {
  ClosedForm f;
  f.root_index = 3;
  f.power = 3.0 * (sol.state.kappa + 1);
  f.poly = poly::from_roots(sol.roots);
  f.exponent = {0.0, sol.b.b1, sol.b.b2, sol.b.b3};
  return f;
}

inline WavefunctionGrid wavefunction_n3(const QESSolutionN3& sol,
                                        const std::vector<double>& grid = default_grid()) {
  return sample_dirac(closed_form_n3(sol), sol.state.kappa, sol.p, grid);
}

struct ZeroEnergyCheckN3 {
  bool holds = false;
  double defect = 0.0;          // n* mu - 3 a1^3/(2 mu) + 3 a1 a2 - 3 a3 mu
  double printed_lhs = 0.0;     // [(n* - 3 a3) mu - 3 a1 a2] mu
  double printed_rhs = 0.0;     // 3 a1^2
  bool printed_holds = false;
  bool discrepancy = false;
};

inline ZeroEnergyCheckN3 zero_energy_check_n3(const DiracState& state, double a1, double a2,
                                              double a3) {
  const double mu = state.mu;
  const double ns = state.n_star();
  ZeroEnergyCheckN3 z;
  z.defect = ns * mu - 1.5 * a1 * a1 * a1 / mu + 3.0 * a1 * a2 - 3.0 * a3 * mu;
  const double scale = std::max({1.0, ns * mu, a1 * a1 * a1 / mu, a1 * a2, a3 * mu});
  z.holds = std::abs(z.defect) <= kCriticalTolerance * scale;
  z.printed_lhs = ((ns - 3.0 * a3) * mu - 3.0 * a1 * a2) * mu;
  z.printed_rhs = 3.0 * a1 * a1;
  z.printed_holds = std::abs(z.printed_lhs - z.printed_rhs) <=
                    kCriticalTolerance * std::max({1.0, std::abs(z.printed_lhs), z.printed_rhs});
  z.discrepancy = z.holds != z.printed_holds;
  return z;
}

inline QESSolutionN3 solve_state_n3(const DiracState& state, double a1, double a2, double a3) {
  QESSolutionN3 sol;
  sol.state = state;
  sol.a1 = a1;
  sol.a2 = a2;
  sol.a3 = a3;
  sol.energies = solve_energy_n3(state, a1, a2, a3);
  if (sol.energies.empty()) throw SolverFailure("no admissible energy in (-mu, mu)", NAN);
  sol.E = sol.energies.front();
  sol.p = state.mu + sol.E;
  sol.b = b_coefficients(sol.E, state, a1, a2);
  int sets = 0;
  sol.roots = solve_bethe_roots_n3(state, sol.E, a1, a2, &sets);
  const ConstrainedPair c = constrained_a4_a5(state, sol.E, a1, a2, sol.roots);
  sol.a4 = c.a4;
  sol.a5 = c.a5;
  const ConstrainedPair cp = printed_general_a4_a5(state, sol.E, a1, a2, sol.roots);
  sol.a4_printed = cp.a4;
  sol.a5_printed = cp.a5;
  const QuadraticIdentity q = quadratic_identity(state, sol.E, a1, a2, a3);
  sol.identity = q.value;
  sol.identity_printed = q.printed;
  sol.diagnostics.energy_residual = energy_residual_n3(sol.E, state, a1, a2, a3);
  sol.diagnostics.bae_residual = bethe_max_residual(bethe_field_n3(state, sol.b), sol.roots);
  sol.diagnostics.admissible_energies = static_cast<int>(sol.energies.size());
  sol.diagnostics.multiple_energies = sol.energies.size() > 1;
  sol.diagnostics.positive_root_sets = sets;
  return sol;
}

}  // namespace qes
