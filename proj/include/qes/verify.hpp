// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

// Oracle suite: per-state verdicts, reference-table reproduction and the
// errata collection written by `qesdirac verify`.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "qes/closed_form.hpp"
#include "qes/errata.hpp"
#include "qes/nonrel.hpp"
#include "qes/oracle.hpp"
#include "qes/reference_tables.hpp"
#include "qes/solver_n2.hpp"
#include "qes/solver_n3.hpp"

namespace qes {

inline constexpr double kBaeThreshold = 1e-10;
inline constexpr double kCoefficientThreshold = 1e-8;
inline constexpr double kTableDecimalTolerance = 1e-8;
inline constexpr double kRadicalTolerance = 1e-10;
inline constexpr double kDegeneracyTolerance = 1e-10;

struct StateVerdict {
  int family = 2;
  int n_r = 0;
  int kappa = 0;  // ell for the Schrodinger family
  double E = 0.0;
  ResidualReport ode;
  ResidualReport spinor;  // unused for the Schrodinger family
  bool spinor_checked = false;
  double bae_residual = 0.0;
  double coefficient_defect = 0.0;  // max relative coefficient difference
  int interior_nodes = 0;

  bool bae_pass() const { return bae_residual <= kBaeThreshold; }
  bool coefficient_pass() const { return coefficient_defect <= kCoefficientThreshold; }
  bool pass() const {
    return ode.pass && (!spinor_checked || spinor.pass) && bae_pass() && coefficient_pass();
  }
};

/// Smallest coefficient-wise distance between prod(x - x_i) and any oracle
/// polynomial; infinity when the oracle fails.
inline double coefficient_agreement(const OracleProblem& pb, const std::vector<double>& roots) {
  const poly::Coeffs mine = poly::from_roots(roots);
  double best = std::numeric_limits<double>::infinity();
  try {
    const OracleResult res = coefficient_oracle(pb);
    for (const auto& s : res.solutions) {
      if (s.poly.size() != mine.size()) continue;
      double d = 0.0;
      for (std::size_t i = 0; i < mine.size(); ++i)
        d = std::max(d, std::abs(s.poly[i] - mine[i]) / std::max(1.0, std::abs(mine[i])));
      best = std::min(best, d);
    }
  } catch (const OracleFailure&) {
  }
  return best;
}

inline StateVerdict verify_state(const QESSolutionN2& sol, double threshold = kResidualThreshold) {
  StateVerdict v;
  v.family = 2;
  v.n_r = sol.state.n_r;
  v.kappa = sol.state.kappa;
  v.E = sol.E;
  const WavefunctionGrid wf = wavefunction_n2(sol);
  v.ode = ode_residual(wf.form, sol.potential(), sol.state, sol.E, default_grid(), threshold);
  v.spinor = spinor_roundtrip(wf, sol.potential(), sol.state, sol.E, threshold);
  v.spinor_checked = true;
  v.bae_residual = sol.diagnostics.bae_residual;
  v.coefficient_defect =
      coefficient_agreement(oracle_problem_n2(sol.state, sol.E, sol.a1), sol.roots);
  v.interior_nodes = sign_changes(wf.F);
  return v;
}

inline StateVerdict verify_state(const QESSolutionN3& sol, double threshold = kResidualThreshold) {
  StateVerdict v;
  v.family = 3;
  v.n_r = sol.state.n_r;
  v.kappa = sol.state.kappa;
  v.E = sol.E;
  const WavefunctionGrid wf = wavefunction_n3(sol);
  v.ode = ode_residual(wf.form, sol.potential(), sol.state, sol.E, default_grid(), threshold);
  v.spinor = spinor_roundtrip(wf, sol.potential(), sol.state, sol.E, threshold);
  v.spinor_checked = true;
  v.bae_residual = sol.diagnostics.bae_residual;
  v.coefficient_defect =
      coefficient_agreement(oracle_problem_n3(sol.state, sol.E, sol.a1, sol.a2), sol.roots);
  v.interior_nodes = sign_changes(wf.F);
  return v;
}

inline StateVerdict verify_state(const NonRelSolution& sol, double threshold = kResidualThreshold) {
  StateVerdict v;
  v.family = 0;
  v.n_r = sol.state.n_r;
  v.kappa = sol.state.ell;
  v.E = sol.Eprime;
  const WavefunctionGrid wf = wavefunction_nonrel(sol);
  v.ode = ode_residual(wf.form, sol.potential(), sol.state, sol.Eprime, default_grid(), threshold);
  v.bae_residual = sol.bae_residual;
  v.coefficient_defect = coefficient_agreement(
      oracle_problem_nonrel(sol.state.n_r, sol.state.ell, sol.Eprime, sol.a1, sol.a2), sol.roots);
  v.interior_nodes = sign_changes(wf.F);
  return v;
}

/// Residual of the N=3 closed form when (a4, a5) are replaced.
inline ResidualReport n3_residual_with(const QESSolutionN3& sol, double a4, double a5,
                                       double threshold = kResidualThreshold) {
  const WavefunctionGrid wf = wavefunction_n3(sol);
  const PotentialSpec spec = PotentialSpec::third_root(sol.a1, sol.a2, sol.a3, a4, a5);
  return ode_residual(wf.form, spec, sol.state, sol.E, default_grid(), threshold);
}

inline ResidualReport n2_residual_with(const QESSolutionN2& sol, double a3,
                                       double threshold = kResidualThreshold) {
  const WavefunctionGrid wf = wavefunction_n2(sol);
  return ode_residual(wf.form, PotentialSpec::square_root(sol.a1, sol.a2, a3), sol.state, sol.E,
                      default_grid(), threshold);
}

// ---------------------------------------------------------------------------
// Reference tables.
// ---------------------------------------------------------------------------

struct SquareRootTableRow {
  reference::SquareRootRow ref;
  QESSolutionN2 sol;
  double E_reference = 0.0;
  double E_diff = 0.0;
  double a3_diff = 0.0;
  double a3_printed_formula_diff = 0.0;  // printed constraint vs stored decimal
  bool E_match = false;
  bool a3_match = false;
  StateVerdict verdict;
  ResidualReport reference_a3_residual;  // closed form with the stored a3
};

inline std::vector<SquareRootTableRow> reproduce_square_root_table(
    double threshold = kResidualThreshold) {
  std::vector<SquareRootTableRow> out;
  for (const auto& ref : reference::square_root_table()) {
    SquareRootTableRow row;
    row.ref = ref;
    row.sol = solve_state_n2(DiracState{ref.n_r, ref.kappa, 1.0}, 1.0, 1.0);
    row.E_reference = ref.energy.value();
    row.E_diff = std::abs(row.sol.E - row.E_reference);
    row.E_match = row.E_diff <= kRadicalTolerance;
    row.a3_diff = std::abs(row.sol.a3 - ref.a3);
    row.a3_printed_formula_diff = std::abs(row.sol.a3_printed - ref.a3);
    row.a3_match = row.a3_diff <= kTableDecimalTolerance;
    row.verdict = verify_state(row.sol, threshold);
    row.reference_a3_residual = n2_residual_with(row.sol, ref.a3, threshold);
    out.push_back(std::move(row));
  }
  return out;
}

struct ThirdRootTableRow {
  reference::ThirdRootRow ref;
  QESSolutionN3 sol;
  std::string label;  // recomputed spectroscopic label
  double E_diff = 0.0;
  double a4_diff = 0.0;
  double a5_diff = 0.0;
  bool E_match = false;
  StateVerdict verdict;
  ResidualReport reference_residual;  // closed form with the stored (a4, a5)
};

inline std::vector<ThirdRootTableRow> reproduce_third_root_table(
    double threshold = kResidualThreshold) {
  std::vector<ThirdRootTableRow> out;
  for (const auto& ref : reference::kThirdRootTable) {
    ThirdRootTableRow row;
    row.ref = ref;
    const DiracState st{ref.n_r, ref.kappa, 1.0};
    row.sol = solve_state_n3(st, 2.0, 2.0, 2.0);
    row.label = spectroscopic_label(st);
    row.E_diff = std::abs(row.sol.E - ref.energy);
    row.E_match = row.E_diff <= kTableDecimalTolerance;
    row.a4_diff = std::abs(row.sol.a4 - ref.a4);
    row.a5_diff = std::abs(row.sol.a5 - ref.a5);
    row.verdict = verify_state(row.sol, threshold);
    row.reference_residual = n3_residual_with(row.sol, ref.a4, ref.a5, threshold);
    out.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Degeneracy.
// ---------------------------------------------------------------------------

inline std::vector<DegeneracyViolation> degeneracy_audit_n2(double a1, double a2, double mu,
                                                            int max_nr, int max_kappa) {
  return degeneracy_audit(2, max_nr, max_kappa, [&](int nr, int k) {
    return solve_energy_n2(DiracState{nr, k, mu}, a1, a2);
  }, kDegeneracyTolerance);
}

inline std::vector<DegeneracyViolation> degeneracy_audit_n3(double a1, double a2, double a3,
                                                            double mu, int max_nr,
                                                            int max_kappa) {
  return degeneracy_audit(3, max_nr, max_kappa, [&](int nr, int k) {
    return solve_energy_n3(DiracState{nr, k, mu}, a1, a2, a3);
  }, kDegeneracyTolerance);
}

// ---------------------------------------------------------------------------
// Errata.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string pass_word(bool p) { return p ? "pass" : "fail"; }

inline std::string residual_cell(const ResidualReport& r) {
  return fmt_num(r.max_rel_residual, 3) + " (" + pass_word(r.pass) + ")";
}

inline std::string state_cell(int n_r, int kappa) {
  return "(" + std::to_string(n_r) + "," + std::to_string(kappa) + ")";
}

}  // namespace detail

inline Erratum erratum_third_root_zero_energy(double threshold) {
  Erratum e;
  e.id = "third-root-zero-energy-condition";
  e.title = "Critical coupling for a zero-energy state of the third-root family.";
  e.printed = "[(n* - 3 a3) mu - 3 a1 a2] mu = 3 a1^2";
  e.derived = "n* mu - 3 a1^3 / (2 mu) + 3 a1 a2 - 3 a3 mu = 0 (energy quintic at u = 1)";
  e.table.header = {"state", "a1", "a2", "a3", "solver E", "derived defect", "printed lhs",
                    "printed rhs", "ODE residual"};
  const struct { int nr, k; double a1, a2; } sets[] = {{0, 1, 2, 2}, {1, 1, 2, 2}, {0, 2, 1, 1}};
  for (const auto& s : sets) {
    const DiracState st{s.nr, s.k, 1.0};
    const double a3 = (st.n_star() * st.mu - 1.5 * s.a1 * s.a1 * s.a1 / st.mu + 3.0 * s.a1 * s.a2) /
                      (3.0 * st.mu);
    const ZeroEnergyCheckN3 z = zero_energy_check_n3(st, s.a1, s.a2, a3);
    const QESSolutionN3 sol = solve_state_n3(st, s.a1, s.a2, a3);
    const StateVerdict v = verify_state(sol, threshold);
    e.table.rows.push_back({detail::state_cell(s.nr, s.k), fmt_num(s.a1), fmt_num(s.a2),
                            fmt_num(a3), fmt_num(sol.E, 3), fmt_num(z.defect, 3),
                            fmt_num(z.printed_lhs), fmt_num(z.printed_rhs),
                            detail::residual_cell(v.ode)});
  }
  e.evidence.push_back(
      "Parameters built from the derived condition give E = 0 from the energy quintic and a "
      "closed form that passes the residual oracle; the printed relation is violated at every "
      "such point.");
  return e;
}

inline Erratum erratum_third_root_a5_sign(const std::vector<ThirdRootTableRow>& rows) {
  Erratum e;
  e.id = "third-root-constraint-a5-sign";
  e.title = "Sign of the 2 b2 S1 / 9 term in the general third-root constraint for a5.";
  e.printed = "a5 = [b1 (n_r + 3 kappa + 2)/9 + b3 S2/3 - 2 b2 S1/9] / (mu + E)";
  e.derived = "a5 = [b1 (n_r + 3 kappa + 2)/9 + b3 S2/3 + 2 b2 S1/9] / (mu + E)";
  e.table.header = {"state", "a5 derived", "a5 printed form", "residual derived",
                    "residual printed form", "residual printed first-excited form"};
  for (const auto& r : rows) {
    if (r.ref.n_r == 0) continue;
    const double th = r.verdict.ode.threshold;
    std::string first = "n/a";
    if (r.ref.n_r == 1) {
      const ConstrainedPair pf =
          printed_first_a4_a5(r.sol.state, r.sol.E, 2.0, 2.0, r.sol.roots.front());
      first = detail::residual_cell(n3_residual_with(r.sol, pf.a4, pf.a5, th));
    }
    e.table.rows.push_back({detail::state_cell(r.ref.n_r, r.ref.kappa), fmt_num(r.sol.a5),
                            fmt_num(r.sol.a5_printed), detail::residual_cell(r.verdict.ode),
                            detail::residual_cell(n3_residual_with(r.sol, r.sol.a4,
                                                                   r.sol.a5_printed, th)),
                            first});
  }
  e.evidence.push_back("S1 = sum x_m, S2 = sum x_m^2; mu = 1, a1 = a2 = a3 = 2.");
  return e;
}

inline Erratum erratum_third_root_ground_a4(const std::vector<ThirdRootTableRow>& rows) {
  Erratum e;
  e.id = "third-root-ground-state-a4";
  e.title = "Ground-state third-root constraint for a4 carries an extra b3/3.";
  e.printed = "a4 = [b1^2/18 + b2 (6 kappa + 5)/9 + b3/3] / (mu + E)";
  e.derived = "a4 = [b1^2/18 + b2 (6 kappa + 5)/9] / (mu + E)";
  e.table.header = {"state", "a4 derived", "a4 printed form", "residual derived",
                    "residual printed form"};
  for (const auto& r : rows) {
    if (r.ref.n_r != 0) continue;
    const ConstrainedPair pg = printed_ground_a4_a5(r.sol.state, r.sol.E, 2.0, 2.0);
    const double th = r.verdict.ode.threshold;
    e.table.rows.push_back({detail::state_cell(r.ref.n_r, r.ref.kappa), fmt_num(r.sol.a4),
                            fmt_num(pg.a4), detail::residual_cell(r.verdict.ode),
                            detail::residual_cell(n3_residual_with(r.sol, pg.a4, pg.a5, th))});
  }
  return e;
}

inline Erratum erratum_third_root_identity(const std::vector<ThirdRootTableRow>& rows) {
  Erratum e;
  e.id = "third-root-quadratic-identity";
  e.title = "x^2 coefficient identity of the third-root reduction omits the n_r term.";
  e.printed = "18 b3 (kappa + 1) + 4 b1 b2 + 18 (mu + E) a3 = 0";
  e.derived = "6 b3 n_r + 18 b3 (kappa + 1) + 4 b1 b2 + 18 (mu + E) a3 = 0";
  e.table.header = {"state", "derived identity", "printed identity"};
  for (const auto& r : rows) {
    if (r.ref.n_r == 0) continue;
    e.table.rows.push_back({detail::state_cell(r.ref.n_r, r.ref.kappa),
                            fmt_num(r.sol.identity, 3), fmt_num(r.sol.identity_printed, 6)});
  }
  return e;
}

inline Erratum erratum_third_root_table(const std::vector<ThirdRootTableRow>& rows) {
  Erratum e;
  e.id = "third-root-table-a4-a5";
  e.title = "Tabulated a4 and a5 for mu = 1, a1 = a2 = a3 = 2.";
  e.printed = "stored a4, a5 columns";
  e.derived = "a4, a5 from the derived constraint with the solver's Bethe roots";
  e.table.header = {"state", "a4 table", "a4 derived", "a5 table", "a5 derived",
                    "residual table", "residual derived"};
  for (const auto& r : rows) {
    e.table.rows.push_back({detail::state_cell(r.ref.n_r, r.ref.kappa), fmt_num(r.ref.a4),
                            fmt_num(r.sol.a4), fmt_num(r.ref.a5), fmt_num(r.sol.a5),
                            detail::residual_cell(r.reference_residual),
                            detail::residual_cell(r.verdict.ode)});
  }
  e.evidence.push_back(
      "The energy column agrees with the recomputed energies; only the constrained "
      "coefficients differ.");
  return e;
}

inline Erratum erratum_third_root_label(const std::vector<ThirdRootTableRow>& rows) {
  Erratum e;
  e.id = "third-root-table-label";
  e.title = "Spectroscopic label of a third-root table row.";
  for (const auto& r : rows) {
    if (r.ref.label != r.label) {
      e.printed += detail::state_cell(r.ref.n_r, r.ref.kappa) + " labelled " +
                   std::string(r.ref.label) + " ";
      e.derived += detail::state_cell(r.ref.n_r, r.ref.kappa) + " is " + r.label + " ";
    }
  }
  if (e.printed.empty()) e.printed = e.derived = "no mismatch";
  return e;
}

inline Erratum erratum_square_root_constraint(const std::vector<SquareRootTableRow>& rows) {
  Erratum e;
  e.id = "square-root-constraint-excited";
  e.title = "Square-root constraint for a3 at n_r >= 1 and the matching table entries.";
  e.printed = "a3 = (kappa + 3/4) a1 / k + [-4 k S1 + n_r (4 kappa + 3)] / (8 (mu + E))";
  e.derived = "a3 = (kappa + 3/4 + n_r/2) a1 / k - k S1 / (2 (mu + E))";
  e.table.header = {"state", "a3 table", "a3 derived", "a3 printed form", "residual table",
                    "residual derived"};
  for (const auto& r : rows) {
    if (r.ref.n_r == 0) continue;
    e.table.rows.push_back({detail::state_cell(r.ref.n_r, r.ref.kappa), fmt_num(r.ref.a3),
                            fmt_num(r.sol.a3), fmt_num(r.sol.a3_printed),
                            detail::residual_cell(r.reference_a3_residual),
                            detail::residual_cell(r.verdict.ode)});
  }
  e.evidence.push_back("k = sqrt(mu^2 - E^2), S1 = sum x_i; mu = 1, a1 = a2 = 1.");
  e.evidence.push_back(
      "For n_r = 0 both forms coincide and the table matches. For n_r = 1 the table follows "
      "the printed form; for n_r = 2 it matches neither.");
  return e;
}

inline Erratum erratum_nonrel_energy(double threshold) {
  Erratum e;
  e.id = "nonrel-energy";
  e.title = "Non-relativistic energy relation and its closed form.";
  e.printed = "n s - a1^2/(4 s) + a2 = 0, E' = -(a1^2 n + 2 a2^2 + 2 a2 sqrt(a2^2 + a1^2 n)) / (4 n^2)";
  e.derived = "n s^3 + a2 s^2 - a1^2/4 = 0, E' = -s^2, n = n_r + 2 ell + 2";
  e.table.header = {"state", "a1", "a2", "E' derived", "E' closed form", "E' quadratic root",
                    "residual derived", "residual closed form"};
  const struct { int nr, l; double a1, a2; } sets[] = {{0, 0, 1, 1}, {0, 1, 1, 1}, {0, 0, 2, 0.5}};
  for (const auto& s : sets) {
    const SchrodingerState st{s.nr, s.l};
    const NonRelSolution sol = solve_state_nonrel(st, s.a1, s.a2);
    const StateVerdict v = verify_state(sol, threshold);
    // ground-state closed form at the printed energy, a3 following it
    const double sp = std::sqrt(-sol.printed.closed_form_energy);
    NonRelSolution alt = sol;
    alt.s = sp;
    alt.Eprime = -sp * sp;
    alt.a3 = (s.l + 0.75) * s.a1 / sp;
    const WavefunctionGrid wf = wavefunction_nonrel(alt);
    const ResidualReport rp =
        ode_residual(wf.form, alt.potential(), st, alt.Eprime, default_grid(), threshold);
    e.table.rows.push_back({detail::state_cell(s.nr, s.l), fmt_num(s.a1), fmt_num(s.a2),
                            fmt_num(sol.Eprime), fmt_num(sol.printed.closed_form_energy),
                            fmt_num(sol.printed.quadratic_energy),
                            detail::residual_cell(v.ode), detail::residual_cell(rp)});
  }
  e.evidence.push_back(
      "The printed closed form squares the negative root of n s^2 + a2 s - a1^2/4 = 0, so it "
      "is not a solution of the printed relation either.");
  e.evidence.push_back(
      "Coefficient matching of the Schrodinger ansatz gives the cubic independently of the "
      "relativistic limit.");
  return e;
}

inline Erratum erratum_nonrel_wavefunction(double threshold) {
  Erratum e;
  e.id = "nonrel-wavefunction-sign";
  e.title = "Sign of the linear exponent term in the non-relativistic wavefunction.";
  e.printed = "exp(-s x^2 - a1 x / s)";
  e.derived = "exp(-s x^2 + a1 x / s)";
  e.table.header = {"state", "residual derived", "residual printed sign"};
  for (int nr = 0; nr <= 1; ++nr) {
    const NonRelSolution sol = solve_state_nonrel({nr, 0}, 1.0, 1.0);
    const WavefunctionGrid good = wavefunction_nonrel(sol);
    const WavefunctionGrid bad = wavefunction_nonrel(sol, default_grid(), -1);
    const auto rg = ode_residual(good.form, sol.potential(), sol.state, sol.Eprime,
                                 default_grid(), threshold);
    const auto rb = ode_residual(bad.form, sol.potential(), sol.state, sol.Eprime,
                                 default_grid(), threshold);
    e.table.rows.push_back({detail::state_cell(nr, 0), detail::residual_cell(rg),
                            detail::residual_cell(rb)});
  }
  e.evidence.push_back("a1 = a2 = 1.");
  return e;
}

inline Erratum erratum_nonrel_constraint(double threshold) {
  Erratum e;
  e.id = "nonrel-constraint";
  e.title = "Non-relativistic constraint for a3 at n_r >= 1.";
  e.printed = "a3 = (ell + 3/4) a1 / s - s S1 + n_r (ell + 3/4)";
  e.derived = "a3 = (ell + 3/4 + n_r/2) a1 / s - s S1";
  e.table.header = {"state", "a3 derived", "a3 printed form", "residual derived",
                    "residual printed form"};
  for (int nr = 1; nr <= 2; ++nr) {
    const NonRelSolution sol = solve_state_nonrel({nr, 0}, 1.0, 1.0);
    const WavefunctionGrid wf = wavefunction_nonrel(sol);
    const auto rg = ode_residual(wf.form, sol.potential(), sol.state, sol.Eprime,
                                 default_grid(), threshold);
    const auto rb = ode_residual(wf.form, PotentialSpec::square_root(1.0, 1.0, sol.a3_printed),
                                 sol.state, sol.Eprime, default_grid(), threshold);
    e.table.rows.push_back({detail::state_cell(nr, 0), fmt_num(sol.a3), fmt_num(sol.a3_printed),
                            detail::residual_cell(rg), detail::residual_cell(rb)});
  }
  e.evidence.push_back("a1 = a2 = 1.");
  return e;
}

inline std::vector<ExpectationReport> expectation_grid() {
  std::vector<ExpectationReport> out;
  for (double a1 : {0.5, 1.0, 2.0})
    for (double a2 : {0.5, 1.0, 2.0}) out.push_back(expectation_values({0, 0}, a1, a2));
  return out;
}

inline Erratum erratum_expectation_closed_forms(const std::vector<ExpectationReport>& grid) {
  Erratum e;
  e.id = "nonrel-expectation-closed-forms";
  e.title = "Closed forms for <r^-1/2>, <r^-1> and <r^-2> in the ground state.";
  e.printed =
      "<r^-1/2> = a1/(2n) (1 + a2/R), <r^-1> = -(2 a2 + a2^2/R + R)/(2 n^2), "
      "<r^-2> = -(2 E' + a1^2/(4n) (1 + a2/R)) / (n (2 ell + 1)), R = sqrt(a2^2 + a1^2 n)";
  e.derived = "quadrature over the normalized closed-form wavefunction";
  e.table.header = {"a1", "a2", "observable", "printed", "quadrature", "relative difference"};
  for (const auto& rep : grid)
    for (const auto& en : rep.entries)
      e.table.rows.push_back({fmt_num(rep.a1), fmt_num(rep.a2), "<" + en.observable + ">",
                              fmt_num(en.printed), fmt_num(en.quadrature),
                              fmt_num(en.printed_vs_quadrature, 3)});
  e.evidence.push_back("The printed <r^-1> is negative for positive a2.");
  e.evidence.push_back("ell = 0, n_r = 0.");
  return e;
}

inline Erratum erratum_hellmann_feynman(const std::vector<ExpectationReport>& grid) {
  Erratum e;
  e.id = "nonrel-hellmann-feynman";
  e.title = "Reading expectation values off parameter derivatives of the energy.";
  e.printed = "<r^-1/2> = -dE'/da1, <r^-1> = dE'/da2, <r^-2> = (dE'/d ell) / (2 ell + 1)";
  e.derived =
      "dE'/dq = <dV_eff/dq> + (da3/dq) <r^-3/2>, since a3 is tied to (a1, a2, ell) by the "
      "constraint";
  e.table.header = {"a1", "a2", "observable", "derivative reading", "quadrature",
                    "relative difference", "dE'/dq vs full generator"};
  for (const auto& rep : grid)
    for (const auto& en : rep.entries)
      e.table.rows.push_back({fmt_num(rep.a1), fmt_num(rep.a2), "<" + en.observable + ">",
                              fmt_num(en.hft_value), fmt_num(en.quadrature),
                              fmt_num(en.hft_vs_quadrature, 3),
                              fmt_num(en.derivative_vs_generator, 3)});
  e.evidence.push_back(
      "Central differences with relative step 1e-6; ell varied continuously.");
  return e;
}

inline Erratum erratum_coulomb(double threshold) {
  Erratum e;
  e.id = "nonrel-coulomb-limit";
  e.title = "Coulomb limit a1 = a3 = 0, V = a2/r with a2 < 0.";
  e.printed = "E' = -a2^2 / (n_r + ell + 1)^2";
  e.derived = "E' = -a2^2 / (4 (n_r + ell + 1)^2) with 2m = hbar = 1";
  e.table.header = {"state", "a2", "exact", "cubic at a1 = 0", "claimed", "residual exact",
                    "residual claimed", "oracle polynomial defect"};
  const struct { int nr, l; } sets[] = {{0, 0}, {1, 0}, {0, 1}, {2, 1}};
  for (const auto& s : sets) {
    const CoulombCheck c = coulomb_limit_check(-1.0, {s.nr, s.l}, threshold);
    e.table.rows.push_back({detail::state_cell(s.nr, s.l), fmt_num(c.a2),
                            fmt_num(c.exact_energy), fmt_num(c.cubic_energy),
                            fmt_num(c.claimed_energy), detail::residual_cell(c.residual),
                            detail::residual_cell(c.claimed_residual),
                            fmt_num(c.oracle_polynomial_defect, 3)});
  }
  e.evidence.push_back(
      "The cubic at a1 = 0 gives s = -a2/n with n = 2 n_r + 2 ell + 2 counting nodes in x = "
      "sqrt(r); this is the exact level.");
  return e;
}

struct SuiteReport {
  double threshold = kResidualThreshold;
  std::vector<SquareRootTableRow> square_root_rows;
  std::vector<ThirdRootTableRow> third_root_rows;
  std::vector<StateVerdict> extra_states;  // n_r = 3, 4 and the Schrodinger states
  std::vector<DegeneracyViolation> degeneracy_n2;
  std::vector<DegeneracyViolation> degeneracy_n3;
  std::vector<ExpectationReport> expectations;
  std::vector<Erratum> errata;

  int failures() const {
    int f = 0;
    for (const auto& r : square_root_rows) f += !r.verdict.pass() || !r.E_match;
    for (const auto& r : third_root_rows) f += !r.verdict.pass() || !r.E_match;
    for (const auto& v : extra_states) f += !v.pass();
    f += static_cast<int>(degeneracy_n2.size() + degeneracy_n3.size());
    return f;
  }
  bool pass() const { return failures() == 0; }
};

/// Runs every oracle over the reference states and gathers the errata.
inline SuiteReport run_suite(double threshold = kResidualThreshold) {
  SuiteReport rep;
  rep.threshold = threshold;
  rep.square_root_rows = reproduce_square_root_table(threshold);
  rep.third_root_rows = reproduce_third_root_table(threshold);
  for (int nr = 3; nr <= 4; ++nr)
    for (int k = 1; k <= 5; ++k) {
      rep.extra_states.push_back(verify_state(solve_state_n2({nr, k, 1.0}, 1.0, 1.0), threshold));
      rep.extra_states.push_back(
          verify_state(solve_state_n3({nr, k, 1.0}, 2.0, 2.0, 2.0), threshold));
    }
  for (int nr = 0; nr <= 2; ++nr)
    for (int l = 0; l <= 2; ++l)
      rep.extra_states.push_back(verify_state(solve_state_nonrel({nr, l}, 1.0, 1.0), threshold));
  rep.degeneracy_n2 = degeneracy_audit_n2(1.0, 1.0, 1.0, 3, 4);
  rep.degeneracy_n3 = degeneracy_audit_n3(2.0, 2.0, 2.0, 1.0, 3, 4);
  rep.expectations = expectation_grid();

  rep.errata.push_back(erratum_square_root_constraint(rep.square_root_rows));
  rep.errata.push_back(erratum_third_root_zero_energy(threshold));
  rep.errata.push_back(erratum_third_root_a5_sign(rep.third_root_rows));
  rep.errata.push_back(erratum_third_root_ground_a4(rep.third_root_rows));
  rep.errata.push_back(erratum_third_root_identity(rep.third_root_rows));
  rep.errata.push_back(erratum_third_root_table(rep.third_root_rows));
  rep.errata.push_back(erratum_third_root_label(rep.third_root_rows));
  rep.errata.push_back(erratum_nonrel_energy(threshold));
  rep.errata.push_back(erratum_nonrel_wavefunction(threshold));
  rep.errata.push_back(erratum_nonrel_constraint(threshold));
  rep.errata.push_back(erratum_expectation_closed_forms(rep.expectations));
  rep.errata.push_back(erratum_hellmann_feynman(rep.expectations));
  rep.errata.push_back(erratum_coulomb(threshold));
  return rep;
}

}  // namespace qes
