// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

// Square-root family V_2 = -a1 r^{-1/2} + a2 r^{-1} + a3 r^{-3/2}.
//
// With k = sqrt(mu^2 - E^2), p = mu + E and x = r^{1/2}:
//   F = x^{2(kappa+1)} prod(x - x_i) exp(-k x^2 + 2 a1 p x / k).

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "qes/bethe.hpp"
#include "qes/closed_form.hpp"
#include "qes/errors.hpp"
#include "qes/oracle.hpp"
#include "qes/polynomial.hpp"
#include "qes/potential.hpp"

namespace qes {

inline constexpr double kCriticalTolerance = 1e-12;

struct Diagnostics {
  double energy_residual = 0.0;
  double bae_residual = 0.0;
  int admissible_energies = 0;
  int positive_root_sets = 0;  // all-positive coefficient-matching solutions
  bool multiple_energies = false;
};

struct QESSolutionN2 {
  DiracState state;
  double a1 = 0.0;
  double a2 = 0.0;
  std::vector<double> energies;
  double E = 0.0;
  double k = 0.0;   // sqrt(mu^2 - E^2)
  double p = 0.0;   // mu + E
  double b1 = 0.0;  // linear exponent coefficient
  double b2 = 0.0;  // quadratic exponent coefficient, -k
  std::vector<double> roots;
  double a3 = 0.0;
  double a3_printed = 0.0;  // constraint as printed with the n_r(4 kappa + 3) term
  Diagnostics diagnostics;

  PotentialSpec potential() const { return PotentialSpec::square_root(a1, a2, a3); }
};

namespace detail {

inline void check_energy(double E, double mu) {
  if (!(std::abs(E) < mu)) throw DomainError("energy must lie strictly inside (-mu, mu)");
}

inline double gap(double E, double mu) { return std::sqrt((mu - E) * (mu + E)); }

}  // namespace detail

/// n' k - a1^2 p^2 / k^2 + 2 a2 p.
inline double energy_residual_n2(double E, const DiracState& state, double a1, double a2) {
  detail::check_energy(E, state.mu);
  const double k = detail::gap(E, state.mu);
  const double p = state.mu + E;
  return state.n_prime() * k - a1 * a1 * p * p / (k * k) + 2.0 * a2 * p;
}

/// 2 mu n' u^3 + (4 mu a2 - a1^2) u^2 - a1^2 in u = sqrt((mu-E)/(mu+E)).
inline poly::Coeffs energy_cubic_n2(const DiracState& state, double a1, double a2) {
  const double mu = state.mu;
  return {-a1 * a1, 0.0, 4.0 * mu * a2 - a1 * a1, 2.0 * mu * state.n_prime()};
}

inline double energy_from_u(double u, double mu) { return mu * (1.0 - u * u) / (1.0 + u * u); }

/// All admissible energies, ascending.
inline std::vector<double> solve_energy_n2(const DiracState& state, double a1, double a2) {
  state.validate();
  if (!(a1 > 0.0) || !(a2 > 0.0)) throw DomainError("a1 and a2 must be positive");
  const poly::Coeffs c = energy_cubic_n2(state, a1, a2);
  std::vector<double> out;
  for (double u : poly::positive_real_roots(c)) {
    const double E = energy_from_u(u, state.mu);
    if (std::abs(E) < state.mu) out.push_back(E);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline BetheField bethe_field_n2(const DiracState& state, double E, double a1) {
  detail::check_energy(E, state.mu);
  const double k = detail::gap(E, state.mu);
  const double p = state.mu + E;
  return BetheField{0.0, 2.0 * k, -2.0 * a1 * p / k, -(4.0 * state.kappa + 3.0) / 2.0};
}

/// Coefficient-matching problem at energy E. a2 is recovered from the energy
/// equation so that only (E, a1) are needed.
inline OracleProblem oracle_problem_n2(const DiracState& state, double E, double a1) {
  detail::check_energy(E, state.mu);
  const double k = detail::gap(E, state.mu);
  const double p = state.mu + E;
  const double a2 = (a1 * a1 * p * p / (k * k) - state.n_prime() * k) / (2.0 * p);
  OracleProblem pb;
  pb.family = 2;
  pb.degree = state.n_r;
  pb.j = state.kappa;
  pb.c0 = E * E - state.mu * state.mu;
  pb.coupling = 2.0 * p;
  pb.free = {a1, a2};
  pb.exponent = {0.0, 2.0 * a1 * p / k, -k};
  return pb;
}

/// Positive roots of the single-root equation.
inline std::vector<double> single_root_candidates(const BetheField& f) {
  return poly::positive_real_roots(f.times_x());
}

inline std::vector<double> solve_bethe_roots_n2(const DiracState& state, double E, double a1,
                                                int* positive_sets = nullptr) {
  state.validate();
  const BetheField f = bethe_field_n2(state, E, a1);
  const int n = state.n_r;
  if (positive_sets) *positive_sets = n == 0 ? 1 : 0;
  if (n == 0) return {};
  if (n == 1) {
    const std::vector<double> cand = single_root_candidates(f);
    if (cand.empty())
      throw SolverFailure("single-root equation has no positive root", NAN);
    if (positive_sets) *positive_sets = static_cast<int>(cand.size());
    return {bethe_newton(f, {cand.front()}).roots.front()};
  }
  std::vector<std::vector<double>> seeds;
  try {
    const OracleResult orc = coefficient_oracle(oracle_problem_n2(state, E, a1));
    if (positive_sets) *positive_sets = count_positive_solutions(orc);
    std::vector<const OracleSolution*> pos;
    for (const auto& s : orc.solutions)
      if (s.all_positive) pos.push_back(&s);
    for (const auto* s : pos) seeds.push_back(solution_roots(*s));
  } catch (const OracleFailure&) {
  }
  const std::vector<double> single = single_root_candidates(f);
  const double centre = single.empty() ? 1.0 : single.front();
  for (auto& s : spread_seeds(centre, n, 8)) seeds.push_back(std::move(s));
  return solve_bethe(f, seeds).roots;
}

/// a3 = (kappa + 3/4 + n_r/2) a1 / k - k sum(x_i) / (2p).
inline double constrained_a3(const DiracState& state, double E, double a1,
                             const std::vector<double>& roots) {
  detail::check_energy(E, state.mu);
  const double k = detail::gap(E, state.mu);
  const double p = state.mu + E;
  double sum = 0.0;
  for (double x : roots) sum += x;
  return (state.kappa + 0.75 + 0.5 * state.n_r) * a1 / k - k * sum / (2.0 * p);
}

/// Constraint with n_r(4 kappa + 3) in place of 4 a1 p n_r / k.
inline double printed_constraint_a3(const DiracState& state, double E, double a1,
                                    const std::vector<double>& roots) {
  detail::check_energy(E, state.mu);
  const double k = detail::gap(E, state.mu);
  const double p = state.mu + E;
  double sum = 0.0;
  for (double x : roots) sum += x;
  return (state.kappa + 0.75) * a1 / k +
         (-4.0 * k * sum + state.n_r * (4.0 * state.kappa + 3.0)) / (8.0 * p);
}

inline ClosedForm closed_form_n2(const QESSolutionN2& sol) {
  ClosedForm f;
  f.root_index = 2;
  f.power = 2.0 * (sol.state.kappa + 1);
  f.poly = poly::from_roots(sol.roots);
  f.exponent = {0.0, sol.b1, sol.b2};
  return f;
}

inline WavefunctionGrid wavefunction_n2(const QESSolutionN2& sol,
                                        const std::vector<double>& grid = default_grid()) {
  return sample_dirac(closed_form_n2(sol), sol.state.kappa, sol.p, grid);
}

struct ZeroEnergyCheck {
  bool holds = false;
  double defect = 0.0;
};

/// (n' + 2 a2) mu = a1^2; defect = a1^2 - (n' + 2 a2) mu.
inline ZeroEnergyCheck zero_energy_check_n2(const DiracState& state, double a1, double a2) {
  const double d = a1 * a1 - (state.n_prime() + 2.0 * a2) * state.mu;
  return {std::abs(d) <= kCriticalTolerance * std::max(1.0, a1 * a1), d};
}

inline QESSolutionN2 solve_state_n2(const DiracState& state, double a1, double a2) {
  QESSolutionN2 sol;
  sol.state = state;
  sol.a1 = a1;
  sol.a2 = a2;
  sol.energies = solve_energy_n2(state, a1, a2);
  if (sol.energies.empty())
    throw SolverFailure("no admissible energy in (-mu, mu)", NAN);
  sol.E = sol.energies.front();
  sol.k = detail::gap(sol.E, state.mu);
  sol.p = state.mu + sol.E;
  sol.b2 = -sol.k;
  sol.b1 = 2.0 * a1 * sol.p / sol.k;
  int sets = 0;
  sol.roots = solve_bethe_roots_n2(state, sol.E, a1, &sets);
  sol.a3 = constrained_a3(state, sol.E, a1, sol.roots);
  sol.a3_printed = printed_constraint_a3(state, sol.E, a1, sol.roots);
  sol.diagnostics.energy_residual = energy_residual_n2(sol.E, state, a1, a2);
  sol.diagnostics.bae_residual = bethe_max_residual(bethe_field_n2(state, sol.E, a1), sol.roots);
  sol.diagnostics.admissible_energies = static_cast<int>(sol.energies.size());
  sol.diagnostics.multiple_energies = sol.energies.size() > 1;
  sol.diagnostics.positive_root_sets = sets;
  return sol;
}

}  // namespace qes
