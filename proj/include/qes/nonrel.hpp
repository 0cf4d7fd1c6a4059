// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

// Schrodinger limit of the square-root family, 2m = hbar = 1:
//   -phi'' + [ell(ell+1)/r^2 - a1 r^{-1/2} + a2/r + a3 r^{-3/2}] phi = E' phi.
// With s = sqrt(-E') and x = r^{1/2}:
//   phi = x^{2(ell+1)} prod(x - x_i) exp(-s x^2 + a1 x / s),
//   n s^3 + a2 s^2 - a1^2/4 = 0,  n = n_r + 2 ell + 2.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "qes/bethe.hpp"
#include "qes/closed_form.hpp"
#include "qes/errors.hpp"
#include "qes/normalize.hpp"
#include "qes/oracle.hpp"
#include "qes/polynomial.hpp"
#include "qes/potential.hpp"

namespace qes {

inline constexpr double kHftStep = 1e-6;

struct PrintedNonRelEnergy {
  double residual_at_s = 0.0;       // n s - a1^2/(4 s) + a2 at the corrected s
  double quadratic_s = 0.0;         // positive root of n s^2 + a2 s - a1^2/4
  double quadratic_energy = 0.0;    // -quadratic_s^2
  double closed_form_energy = 0.0;  // -(a1^2 n + 2 a2^2 + 2 a2 sqrt(a2^2 + a1^2 n)) / (4 n^2)
  double negative_branch_energy = 0.0;  // -s_-^2 with s_- the negative quadratic root
  bool discrepancy = false;
};

struct NonRelSolution {
  SchrodingerState state;
  double a1 = 0.0;
  double a2 = 0.0;
  int n = 0;
  double s = 0.0;
  double Eprime = 0.0;
  std::vector<double> roots;
  double a3 = 0.0;
  double a3_printed = 0.0;
  double energy_residual = 0.0;
  double bae_residual = 0.0;
  PrintedNonRelEnergy printed;

  PotentialSpec potential() const { return PotentialSpec::square_root(a1, a2, a3); }
};

/// n s - a1^2/(4 s^2) + a2.
inline double energy_residual_nonrel(double s, double n, double a1, double a2) {
  if (!(s > 0.0)) throw DomainError("s must be positive");
  return n * s - a1 * a1 / (4.0 * s * s) + a2;
}

/// Positive root of n s^3 + a2 s^2 - a1^2/4 for continuous n; empty when
/// there is no bound state. a2 may be negative (extra Coulomb attraction).
inline std::optional<double> nonrel_s(double n, double a1, double a2) {
  if (!(n > 0.0)) throw DomainError("principal number must be positive");
  if (a1 == 0.0) {
    if (a2 < 0.0) return -a2 / n;
    return std::nullopt;
  }
  const std::vector<double> r = poly::positive_real_roots(poly::Coeffs{-0.25 * a1 * a1, 0.0, a2, n});
  if (r.empty()) return std::nullopt;
  return r.front();
}

inline PrintedNonRelEnergy printed_nonrel_energy(double n, double a1, double a2, double s) {
  PrintedNonRelEnergy p;
  p.residual_at_s = n * s - a1 * a1 / (4.0 * s) + a2;
  const double root = std::sqrt(a2 * a2 + a1 * a1 * n);
  p.quadratic_s = (-a2 + root) / (2.0 * n);
  p.quadratic_energy = -p.quadratic_s * p.quadratic_s;
  p.closed_form_energy = -(a1 * a1 * n + 2.0 * a2 * a2 + 2.0 * a2 * root) / (4.0 * n * n);
  const double sm = (-a2 - root) / (2.0 * n);
  p.negative_branch_energy = -sm * sm;
  p.discrepancy = std::abs(p.closed_form_energy + s * s) > 1e-12 * (1.0 + s * s);
  return p;
}

inline BetheField bethe_field_nonrel(double ell, double s, double a1) {
  return BetheField{0.0, 2.0 * s, -a1 / s, -(4.0 * ell + 3.0) / 2.0};
}

inline OracleProblem oracle_problem_nonrel(int n_r, double ell, double Eprime, double a1,
                                           double a2) {
  const double s = std::sqrt(-Eprime);
  OracleProblem pb;
  pb.family = 2;
  pb.degree = n_r;
  pb.j = ell;
  pb.c0 = Eprime;
  pb.coupling = 1.0;
  pb.free = {a1, a2};
  pb.exponent = {0.0, a1 / s, -s};
  return pb;
}

namespace detail {

inline std::vector<double> nonrel_roots(int n_r, double ell, double s, double a1, double a2) {
  if (n_r == 0) return {};
  const BetheField f = bethe_field_nonrel(ell, s, a1);
  const std::vector<double> single = poly::positive_real_roots(f.times_x());
  if (n_r == 1) {
    if (single.empty()) throw SolverFailure("single-root equation has no positive root", NAN);
    return {bethe_newton(f, {single.front()}).roots.front()};
  }
  std::vector<std::vector<double>> seeds;
  try {
    const OracleResult orc = coefficient_oracle(oracle_problem_nonrel(n_r, ell, -s * s, a1, a2));
    for (const auto& sol : orc.solutions)
      if (sol.all_positive) seeds.push_back(solution_roots(sol));
  } catch (const OracleFailure&) {
  }
  for (auto& sd : spread_seeds(single.empty() ? 1.0 : single.front(), n_r, 8))
    seeds.push_back(std::move(sd));
  return solve_bethe(f, seeds).roots;
}

inline double nonrel_a3(int n_r, double ell, double s, double a1, const std::vector<double>& roots) {
  double sum = 0.0;
  for (double x : roots) sum += x;
  return (ell + 0.75 + 0.5 * n_r) * a1 / s - s * sum;
}

}  // namespace detail

/// E' for a state; throws SolverFailure when no bound state exists.
inline double solve_energy_nonrel(const SchrodingerState& state, double a1, double a2) {
  state.validate();
  const auto s = nonrel_s(state.principal(), a1, a2);
  if (!s) throw SolverFailure("no bound state for these parameters", NAN);
  return -(*s) * (*s);
}

inline std::vector<double> solve_bethe_roots_nonrel(const SchrodingerState& state, double Eprime,
                                                    double a1) {
  state.validate();
  if (!(Eprime < 0.0)) throw DomainError("E' must be negative");
  const double s = std::sqrt(-Eprime);
  // a2 from the energy equation
  const double a2 = a1 * a1 / (4.0 * s * s) - state.principal() * s;
  return detail::nonrel_roots(state.n_r, state.ell, s, a1, a2);
}

/// a3 = (ell + 3/4 + n_r/2) a1 / s - s sum(x_i).
inline double constrained_a3_nonrel(const SchrodingerState& state, double Eprime, double a1,
                                    const std::vector<double>& roots) {
  if (!(Eprime < 0.0)) throw DomainError("E' must be negative");
  return detail::nonrel_a3(state.n_r, state.ell, std::sqrt(-Eprime), a1, roots);
}

/// Constraint as printed, with n_r (ell + 3/4) in place of n_r a1 / (2 s).
inline double printed_constraint_a3_nonrel(const SchrodingerState& state, double Eprime,
                                           double a1, const std::vector<double>& roots) {
  const double s = std::sqrt(-Eprime);
  double sum = 0.0;
  for (double x : roots) sum += x;
  return (state.ell + 0.75) * a1 / s - s * sum + state.n_r * (state.ell + 0.75);
}

inline NonRelSolution solve_state_nonrel(const SchrodingerState& state, double a1, double a2) {
  NonRelSolution sol;
  sol.state = state;
  sol.a1 = a1;
  sol.a2 = a2;
  sol.n = state.principal();
  sol.Eprime = solve_energy_nonrel(state, a1, a2);
  sol.s = std::sqrt(-sol.Eprime);
  sol.roots = detail::nonrel_roots(state.n_r, state.ell, sol.s, a1, a2);
  sol.a3 = constrained_a3_nonrel(state, sol.Eprime, a1, sol.roots);
  sol.a3_printed = printed_constraint_a3_nonrel(state, sol.Eprime, a1, sol.roots);
  sol.energy_residual = energy_residual_nonrel(sol.s, sol.n, a1, a2);
  sol.bae_residual = bethe_max_residual(bethe_field_nonrel(state.ell, sol.s, a1), sol.roots);
  sol.printed = printed_nonrel_energy(sol.n, a1, a2, sol.s);
  return sol;
}

/// linear_sign = -1 gives the printed exponent -s x^2 - a1 x / s.
inline ClosedForm closed_form_nonrel(const NonRelSolution& sol, int linear_sign = +1) {
  ClosedForm f;
  f.root_index = 2;
  f.power = 2.0 * (sol.state.ell + 1);
  f.poly = poly::from_roots(sol.roots);
  f.exponent = {0.0, linear_sign * sol.a1 / sol.s, -sol.s};
  return f;
}

inline WavefunctionGrid wavefunction_nonrel(const NonRelSolution& sol,
                                            const std::vector<double>& grid = default_grid(),
                                            int linear_sign = +1) {
  return sample_schrodinger(closed_form_nonrel(sol, linear_sign), grid);
}

// ---------------------------------------------------------------------------
// Expectation values.
//
// Along the solvable family a3 moves with every parameter q, so the
// Hellmann-Feynman derivative is
//   dE'/dq = <dV/dq> + (da3/dq) <r^{-3/2}>.
// The report keeps the bare derivatives, the constraint slopes, direct
// quadrature moments and the printed closed forms side by side.
// ---------------------------------------------------------------------------

struct ExpectationEntry {
  std::string observable;      // "r^-1/2", "r^-1", "r^-2"
  std::string parameter;       // "a1", "a2", "ell"
  double derivative = 0.0;     // dE'/dq by central differences
  double hft_value = 0.0;      // derivative mapped to <observable> ignoring a3(q)
  double quadrature = 0.0;     // int phi^2 observable dr
  double constraint_slope = 0.0;   // da3/dq
  double generator = 0.0;      // quadrature of dH/dq including da3/dq r^{-3/2}
  double printed = 0.0;        // printed closed form
  double hft_vs_quadrature = 0.0;        // relative difference
  double derivative_vs_generator = 0.0;  // relative difference
  double printed_vs_quadrature = 0.0;    // relative difference
};

struct ExpectationReport {
  SchrodingerState state;
  double a1 = 0.0;
  double a2 = 0.0;
  double Eprime = 0.0;
  double r_minus_three_halves = 0.0;  // <r^{-3/2}> by quadrature
  double printed_energy_derivative_a1 = 0.0;  // derivative of the printed closed form
  std::vector<ExpectationEntry> entries;
};

namespace detail {

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline double nonrel_energy_cont(int n_r, double a1, double a2, double ell) {
  const auto s = nonrel_s(n_r + 2.0 * ell + 2.0, a1, a2);
  if (!s) throw SolverFailure("no bound state for these parameters", NAN);
  return -(*s) * (*s);
}

inline double nonrel_a3_cont(int n_r, double a1, double a2, double ell) {
  const auto s = nonrel_s(n_r + 2.0 * ell + 2.0, a1, a2);
  if (!s) throw SolverFailure("no bound state for these parameters", NAN);
  return nonrel_a3(n_r, ell, *s, a1, nonrel_roots(n_r, ell, *s, a1, a2));
}

template <class F>
double central_difference(F&& f, double q) {
  const double h = kHftStep * std::max(std::abs(q), 1.0);
  return (f(q + h) - f(q - h)) / (2.0 * h);
}

}  // namespace detail

inline ExpectationReport expectation_values(const SchrodingerState& state, double a1, double a2) {
  state.validate();
  if (!(a1 > 0.0)) throw SolverFailure("no bound state without the r^{-1/2} attraction", NAN);
  const NonRelSolution sol = solve_state_nonrel(state, a1, a2);
  const WavefunctionGrid wf = wavefunction_nonrel(sol, log_grid(1e-2, 50.0, 11));
  const ClosedForm& phi = wf.form;
  const double R = wf.norm.cutoff;
  auto moment = [&](double power) {
    return radial_integral([&](double r) {
      const double f = phi(r);
      return f * f * std::pow(r, -power);
    }, 2, R);
  };
  const double m_half = moment(0.5);
  const double m_one = moment(1.0);
  const double m_two = moment(2.0);
  const double m_three_halves = moment(1.5);

  const int nr = state.n_r;
  const double ell = state.ell;
  const int n = state.principal();
  auto E_a1 = [&](double q) { return detail::nonrel_energy_cont(nr, q, a2, ell); };
  auto E_a2 = [&](double q) { return detail::nonrel_energy_cont(nr, a1, q, ell); };
  auto E_l = [&](double q) { return detail::nonrel_energy_cont(nr, a1, a2, q); };
  auto g_a1 = [&](double q) { return detail::nonrel_a3_cont(nr, q, a2, ell); };
  auto g_a2 = [&](double q) { return detail::nonrel_a3_cont(nr, a1, q, ell); };
  auto g_l = [&](double q) { return detail::nonrel_a3_cont(nr, a1, a2, q); };

  const double root = std::sqrt(a2 * a2 + a1 * a1 * n);
  const double printed_half = a1 / (2.0 * n) * (1.0 + a2 / root);
  const double printed_one = -(2.0 * a2 + a2 * a2 / root + root) / (2.0 * n * n);
  const double printed_two =
      -(2.0 * sol.Eprime + a1 * a1 / (4.0 * n) * (1.0 + a2 / root)) / (n * (2.0 * ell + 1.0));

  ExpectationReport rep;
  rep.state = state;
  rep.a1 = a1;
  rep.a2 = a2;
  rep.Eprime = sol.Eprime;
  rep.r_minus_three_halves = m_three_halves;
  rep.printed_energy_derivative_a1 = -printed_half;

  auto fill = [&](std::string obs, std::string par, double deriv, double hft, double quadv,
                  double slope, double gen, double printed) {
    ExpectationEntry e;
    e.observable = std::move(obs);
    e.parameter = std::move(par);
    e.derivative = deriv;
    e.hft_value = hft;
    e.quadrature = quadv;
    e.constraint_slope = slope;
    e.generator = gen;
    e.printed = printed;
    e.hft_vs_quadrature = detail::rel_diff(hft, quadv);
    e.derivative_vs_generator = detail::rel_diff(deriv, gen);
    e.printed_vs_quadrature = detail::rel_diff(printed, quadv);
    rep.entries.push_back(std::move(e));
  };

  {
    const double d = detail::central_difference(E_a1, a1);
    const double g = detail::central_difference(g_a1, a1);
    fill("r^-1/2", "a1", d, -d, m_half, g, -m_half + g * m_three_halves, printed_half);
  }
  {
    const double d = detail::central_difference(E_a2, a2);
    const double g = detail::central_difference(g_a2, a2);
    fill("r^-1", "a2", d, d, m_one, g, m_one + g * m_three_halves, printed_one);
  }
  {
    const double d = detail::central_difference(E_l, ell);
    const double g = detail::central_difference(g_l, ell);
    fill("r^-2", "ell", d, d / (2.0 * ell + 1.0), m_two, g,
         (2.0 * ell + 1.0) * m_two + g * m_three_halves, printed_two);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Pure Coulomb V = a2 / r with a2 < 0.
// ---------------------------------------------------------------------------

struct CoulombCheck {
  double a2 = 0.0;
  int n_r = 0;  // radial nodes in r
  int ell = 0;
  double exact_energy = 0.0;          // -a2^2 / (4 (n_r + ell + 1)^2)
  double cubic_energy = 0.0;          // corrected cubic at a1 = 0 with 2 n_r nodes in x
  double claimed_energy = 0.0;        // -a2^2 / (n_r + ell + 1)^2
  double printed_closed_form = 0.0;   // printed closed form at a1 = 0
  ResidualReport residual;            // Laguerre closed form at exact_energy
  ResidualReport claimed_residual;    // same wavefunction shape at claimed_energy
  double oracle_polynomial_defect = 0.0;  // Laguerre vs coefficient matching, N = 1
  bool claim_discrepancy = false;
};

/// Monic Laguerre L_n^{(alpha)}(c r) as an ascending polynomial in r.
inline poly::Coeffs monic_laguerre(int n, double alpha, double c) {
  poly::Coeffs out(n + 1, 0.0);
  // L_n^{a}(t) = sum_k (-1)^k binom(n+a, n-k) t^k / k!
  double binom = 1.0;  // binom(n+a, 0) at k = n
  std::vector<double> b(n + 1);
  b[n] = 1.0;
  for (int k = n - 1; k >= 0; --k) {
    // binom(n+a, n-k) = binom(n+a, n-k-1) * (alpha + k + 1) / (n - k)
    binom *= (alpha + k + 1.0) / (n - k);
    b[k] = binom;
  }
  double fact = 1.0;
  double cp = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) {
      fact *= k;
      cp *= c;
    }
    out[k] = ((k % 2) ? -1.0 : 1.0) * b[k] * cp / fact;
  }
  const double lead = out[n];
  for (double& v : out) v /= lead;
  return out;
}

inline CoulombCheck coulomb_limit_check(double a2, const SchrodingerState& state,
                                        double threshold = kResidualThreshold) {
  state.validate();
  if (!(a2 < 0.0)) throw DomainError("Coulomb check needs an attractive a2 < 0");
  CoulombCheck c;
  c.a2 = a2;
  c.n_r = state.n_r;
  c.ell = state.ell;
  const double nh = state.n_r + state.ell + 1.0;
  c.exact_energy = -a2 * a2 / (4.0 * nh * nh);
  c.claimed_energy = -a2 * a2 / (nh * nh);
  const double n_x = 2.0 * state.n_r + 2.0 * state.ell + 2.0;
  const auto s = nonrel_s(n_x, 0.0, a2);
  c.cubic_energy = s ? -(*s) * (*s) : 0.0;
  const double root = std::abs(a2);
  c.printed_closed_form = -(2.0 * a2 * a2 + 2.0 * a2 * root) / (4.0 * n_x * n_x);

  const double k = std::sqrt(-c.exact_energy);
  ClosedForm f;
  f.root_index = 1;
  f.power = state.ell + 1.0;
  f.poly = monic_laguerre(state.n_r, 2.0 * state.ell + 1.0, 2.0 * k);
  f.exponent = {0.0, -k};
  const WavefunctionGrid wf = sample_schrodinger(f, log_grid(1e-2, 50.0, 11));
  const auto coulomb = [a2](double r) { return a2 / r; };
  const double L = state.ell * (state.ell + 1.0);
  c.residual = ode_residual(wf.form, RadialEquation{L, c.exact_energy, 1.0, coulomb},
                            default_grid(), threshold);
  ClosedForm g = wf.form;
  const double kc = std::sqrt(-c.claimed_energy);
  g.poly = monic_laguerre(state.n_r, 2.0 * state.ell + 1.0, 2.0 * kc);
  g.exponent = {0.0, -kc};
  c.claimed_residual = ode_residual(g, RadialEquation{L, c.claimed_energy, 1.0, coulomb},
                                    default_grid(), threshold);

  OracleProblem pb;
  pb.family = 1;
  pb.degree = state.n_r;
  pb.j = state.ell;
  pb.c0 = c.exact_energy;
  pb.coupling = 1.0;
  pb.free = {-a2};
  pb.exponent = {0.0, -k};
  const OracleResult orc = coefficient_oracle(pb);
  const poly::Coeffs& q = orc.solutions.front().poly;
  for (std::size_t i = 0; i < q.size(); ++i)
    c.oracle_polynomial_defect = std::max(c.oracle_polynomial_defect,
                                          std::abs(q[i] - f.poly[i]) / std::max(1.0, std::abs(f.poly[i])));
  c.claim_discrepancy = std::abs(c.claimed_energy - c.exact_energy) > 1e-12 * std::abs(c.exact_energy);
  return c;
}

}  // namespace qes
