// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

// Command implementations behind the qesdirac executable. Argument parsing
// lives in tools/; everything here works on a validated RunConfig and writes
// to caller-supplied streams so it can be tested in-process.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "qes/errors.hpp"
#include "qes/nonrel.hpp"
#include "qes/oracle.hpp"
#include "qes/potential.hpp"
#include "qes/solver_n2.hpp"
#include "qes/solver_n3.hpp"
#include "qes/verify.hpp"

namespace qes::cli {

using nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitSolver = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerify = 3;

inline constexpr const char* kToleranceEnv = "QES_RESIDUAL_TOL";

class UsageError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "usage_error"; }
};

enum class Command { Solve, Table, Wavefunction, Potential, Expect, Verify };
enum class Family { N2, N3, NonRel };
enum class Format { Json, Csv, Text };

struct RunConfig {
  Command command = Command::Solve;
  std::optional<Family> family;
  std::optional<int> n_r;
  std::optional<int> kappa;
  std::optional<int> ell;
  double mu = 1.0;
  std::optional<double> a1;
  std::optional<double> a2;
  std::optional<double> a3;
  std::optional<Format> format;
  std::string output;  // empty or "-" for standard output
  std::string which;   // table1 | table2
  std::string input;   // solve JSON to re-verify; "-" for standard input
  std::string errata_path = "ERRATA.md";
  double r_min = kDefaultGridMin;
  double r_max = kDefaultGridMax;
  int points = kDefaultGridCount;
  double threshold = kResidualThreshold;
};

inline std::optional<Family> parse_family(const std::string& s) {
  if (s == "n2") return Family::N2;
  if (s == "n3") return Family::N3;
  if (s == "nonrel") return Family::NonRel;
  return std::nullopt;
}

inline std::string family_name(Family f) {
  switch (f) {
    case Family::N2: return "n2";
    case Family::N3: return "n3";
    case Family::NonRel: return "nonrel";
  }
  return "";
}

inline std::optional<Format> parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "text") return Format::Text;
  return std::nullopt;
}

/// Residual threshold from QES_RESIDUAL_TOL, or the default when unset.
inline double threshold_from_env(const char* value) {
  if (value == nullptr || *value == '\0') return kResidualThreshold;
  char* end = nullptr;
  const double t = std::strtod(value, &end);
  if (end == value || *end != '\0' || !(t > 0.0) || !std::isfinite(t))
    throw UsageError(std::string(kToleranceEnv) + " must be a positive number");
  return t;
}

inline double threshold_from_env() { return threshold_from_env(std::getenv(kToleranceEnv)); }

// ---------------------------------------------------------------------------
// Number formatting.
// ---------------------------------------------------------------------------

/// Rounded to 15 significant digits; the JSON writer then prints the
/// shortest form, which is at most 15 digits. Non-finite values become null.
inline ordered_json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

inline ordered_json num_array(const std::vector<double>& v) {
  ordered_json a = ordered_json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

inline std::string csv_num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline ordered_json residual_json(const ResidualReport& r) {
  ordered_json j;
  j["max_abs_residual"] = num(r.max_abs_residual);
  j["max_rel_residual"] = num(r.max_rel_residual);
  j["threshold"] = num(r.threshold);
  j["pass"] = r.pass;
  j["grid"] = {{"min", num(r.grid_min)},
               {"max", num(r.grid_max)},
               {"count", r.grid_count},
               {"spacing", r.spacing}};
  return j;
}

// ---------------------------------------------------------------------------
// Validation.
// ---------------------------------------------------------------------------

namespace detail {

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw UsageError(msg);
}

inline void require_positive(const std::optional<double>& v, const char* name) {
  require(v.has_value(), std::string("missing required option --") + name);
  require(*v > 0.0 && std::isfinite(*v), std::string("--") + name + " must be positive");
}

inline void validate_state(const RunConfig& c) {
  require(c.family.has_value(), "missing required option --family");
  require(c.n_r.has_value(), "missing required option --nr");
  require(*c.n_r >= 0, "--nr must be non-negative");
  if (*c.family == Family::NonRel) {
    require(c.ell.has_value(), "missing required option --ell");
    require(*c.ell >= 0, "--ell must be non-negative");
    require(!c.kappa.has_value(), "--kappa does not apply to the nonrel family");
  } else {
    require(c.kappa.has_value(), "missing required option --kappa");
    require(*c.kappa >= 1, "--kappa must be a positive integer");
    require(!c.ell.has_value(), "--ell applies only to the nonrel family");
    require(c.mu > 0.0 && std::isfinite(c.mu), "--mu must be positive");
  }
  require_positive(c.a1, "a1");
  require_positive(c.a2, "a2");
  if (*c.family == Family::N3)
    require_positive(c.a3, "a3");
  else
    require(!c.a3.has_value(), "--a3 is fixed by the constraint for this family");
}

inline void validate_grid(const RunConfig& c) {
  require(c.r_min > 0.0 && c.r_max > c.r_min, "grid needs 0 < --rmin < --rmax");
  require(c.points >= 2, "--points must be at least 2");
}

}  // namespace detail

/// Throws UsageError when a command's required inputs are missing or invalid.
inline void validate(const RunConfig& c) {
  detail::require(c.threshold > 0.0 && std::isfinite(c.threshold),
                  "residual threshold must be positive");
  switch (c.command) {
    case Command::Solve:
      detail::validate_state(c);
      detail::require(c.format.value_or(Format::Json) != Format::Csv,
                      "solve supports json and text output");
      break;
    case Command::Table:
      detail::require(c.which == "table1" || c.which == "table2",
                      "table requires --which table1 or table2");
      detail::require(c.format.value_or(Format::Csv) != Format::Text,
                      "table supports csv and json output");
      break;
    case Command::Wavefunction:
    case Command::Potential:
      detail::validate_state(c);
      detail::validate_grid(c);
      break;
    case Command::Expect:
      detail::require(!c.family || *c.family == Family::NonRel,
                      "expect applies to the nonrel family");
      detail::require(c.n_r.has_value(), "missing required option --nr");
      detail::require(*c.n_r >= 0, "--nr must be non-negative");
      detail::require(c.ell.has_value(), "missing required option --ell");
      detail::require(*c.ell >= 0, "--ell must be non-negative");
      detail::require_positive(c.a1, "a1");
      detail::require_positive(c.a2, "a2");
      detail::require(c.format.value_or(Format::Json) == Format::Json,
                      "expect supports json output");
      break;
    case Command::Verify:
      detail::require(c.format.value_or(Format::Json) == Format::Json,
                      "verify supports json output");
      break;
  }
}

// ---------------------------------------------------------------------------
// Solving.
// ---------------------------------------------------------------------------

/// A solved state of any family with everything the serializers need.
struct SolvedState {
  Family family = Family::N2;
  std::optional<QESSolutionN2> n2;
  std::optional<QESSolutionN3> n3;
  std::optional<NonRelSolution> nonrel;

  double energy() const { return n2 ? n2->E : n3 ? n3->E : nonrel->Eprime; }
  PotentialSpec potential() const {
    return n2 ? n2->potential() : n3 ? n3->potential() : nonrel->potential();
  }
  WavefunctionGrid wavefunction(const std::vector<double>& grid) const {
    return n2 ? wavefunction_n2(*n2, grid) : n3 ? wavefunction_n3(*n3, grid)
                                                : wavefunction_nonrel(*nonrel, grid);
  }
  StateVerdict verdict(double threshold) const {
    return n2 ? verify_state(*n2, threshold) : n3 ? verify_state(*n3, threshold)
                                                  : verify_state(*nonrel, threshold);
  }
};

inline SolvedState solve(const RunConfig& c) {
  SolvedState s;
  s.family = *c.family;
  switch (*c.family) {
    case Family::N2:
      s.n2 = solve_state_n2(DiracState{*c.n_r, *c.kappa, c.mu}, *c.a1, *c.a2);
      break;
    case Family::N3:
      s.n3 = solve_state_n3(DiracState{*c.n_r, *c.kappa, c.mu}, *c.a1, *c.a2, *c.a3);
      break;
    case Family::NonRel:
      s.nonrel = solve_state_nonrel(SchrodingerState{*c.n_r, *c.ell}, *c.a1, *c.a2);
      break;
  }
  return s;
}

inline ordered_json solution_json(const SolvedState& s, const StateVerdict& v) {
  ordered_json j;
  j["family"] = family_name(s.family);
  ordered_json diag;
  if (s.n2) {
    const auto& q = *s.n2;
    j["n_r"] = q.state.n_r;
    j["kappa"] = q.state.kappa;
    j["label"] = spectroscopic_label(q.state);
    j["mu"] = num(q.state.mu);
    j["a"] = {{"a1", num(q.a1)}, {"a2", num(q.a2)}};
    j["energies"] = num_array(q.energies);
    j["E"] = num(q.E);
    j["roots"] = num_array(q.roots);
    j["constrained"] = {{"a3", num(q.a3)}};
    diag["energy_residual"] = num(q.diagnostics.energy_residual);
    diag["bae_residual"] = num(q.diagnostics.bae_residual);
    diag["admissible_energies"] = q.diagnostics.admissible_energies;
    diag["positive_root_sets"] = q.diagnostics.positive_root_sets;
  } else if (s.n3) {
    const auto& q = *s.n3;
    j["n_r"] = q.state.n_r;
    j["kappa"] = q.state.kappa;
    j["label"] = spectroscopic_label(q.state);
    j["mu"] = num(q.state.mu);
    j["a"] = {{"a1", num(q.a1)}, {"a2", num(q.a2)}, {"a3", num(q.a3)}};
    j["energies"] = num_array(q.energies);
    j["E"] = num(q.E);
    j["roots"] = num_array(q.roots);
    j["constrained"] = {{"a4", num(q.a4)}, {"a5", num(q.a5)}};
    diag["energy_residual"] = num(q.diagnostics.energy_residual);
    diag["bae_residual"] = num(q.diagnostics.bae_residual);
    diag["admissible_energies"] = q.diagnostics.admissible_energies;
    diag["positive_root_sets"] = q.diagnostics.positive_root_sets;
  } else {
    const auto& q = *s.nonrel;
    j["n_r"] = q.state.n_r;
    j["ell"] = q.state.ell;
    j["a"] = {{"a1", num(q.a1)}, {"a2", num(q.a2)}};
    j["energies"] = num_array({q.Eprime});
    j["E"] = num(q.Eprime);
    j["roots"] = num_array(q.roots);
    j["constrained"] = {{"a3", num(q.a3)}};
    diag["energy_residual"] = num(q.energy_residual);
    diag["bae_residual"] = num(q.bae_residual);
  }
  diag["ode_residual"] = num(v.ode.max_rel_residual);
  diag["ode_pass"] = v.ode.pass;
  if (v.spinor_checked) {
    diag["spinor_residual"] = num(v.spinor.max_rel_residual);
    diag["spinor_pass"] = v.spinor.pass;
  }
  diag["coefficient_defect"] = num(v.coefficient_defect);
  diag["interior_nodes"] = v.interior_nodes;
  diag["threshold"] = num(v.ode.threshold);
  j["diagnostics"] = diag;
  return j;
}

inline std::string text_lines(const ordered_json& j, const std::string& prefix = "") {
  std::ostringstream os;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object())
      os << text_lines(*it, prefix + it.key() + ".");
    else
      os << prefix << it.key() << ": " << it->dump() << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Commands. Each returns an exit code and writes its document to `out`.
// ---------------------------------------------------------------------------

inline int cmd_solve(const RunConfig& c, std::ostream& out) {
  const SolvedState s = solve(c);
  const StateVerdict v = s.verdict(c.threshold);
  const ordered_json j = solution_json(s, v);
  if (c.format.value_or(Format::Json) == Format::Text)
    out << text_lines(j);
  else
    out << j.dump(2) << "\n";
  return kExitOk;
}

inline std::string verdict_word(bool pass) { return pass ? "PASS" : "FAIL"; }
inline std::string match_word(bool match) { return match ? "MATCH" : "MISMATCH"; }

inline int cmd_table(const RunConfig& c, std::ostream& out) {
  const bool json = c.format.value_or(Format::Csv) == Format::Json;
  bool ok = true;
  if (c.which == "table1") {
    const auto rows = reproduce_square_root_table(c.threshold);
    ordered_json arr = ordered_json::array();
    if (!json)
      out << "n_r,kappa,label,a3,a3_reference,a3_abs_diff,a3_status,a3_verdict,"
             "reference_a3_ode_residual,E,E_reference,E_abs_diff,E_verdict,ode_residual,"
             "ode_verdict\n";
    for (const auto& r : rows) {
      const bool authoritative = r.ref.a3_status == reference::Status::Authoritative;
      const std::string a3_verdict = authoritative ? match_word(r.a3_match) : "DISPUTED";
      ok = ok && r.E_match && r.verdict.pass() && (!authoritative || r.a3_match);
      if (json) {
        arr.push_back({{"n_r", r.ref.n_r},
                       {"kappa", r.ref.kappa},
                       {"label", std::string(r.ref.label)},
                       {"a3", num(r.sol.a3)},
                       {"a3_reference", num(r.ref.a3)},
                       {"a3_abs_diff", num(r.a3_diff)},
                       {"a3_status", std::string(reference::status_name(r.ref.a3_status))},
                       {"a3_verdict", a3_verdict},
                       {"reference_a3_ode_residual", num(r.reference_a3_residual.max_rel_residual)},
                       {"E", num(r.sol.E)},
                       {"E_reference", num(r.E_reference)},
                       {"E_abs_diff", num(r.E_diff)},
                       {"E_verdict", match_word(r.E_match)},
                       {"ode_residual", num(r.verdict.ode.max_rel_residual)},
                       {"ode_verdict", verdict_word(r.verdict.ode.pass)}});
      } else {
        out << r.ref.n_r << "," << r.ref.kappa << "," << r.ref.label << ","
            << csv_num(r.sol.a3) << "," << csv_num(r.ref.a3) << "," << csv_num(r.a3_diff) << ","
            << reference::status_name(r.ref.a3_status) << "," << a3_verdict << ","
            << csv_num(r.reference_a3_residual.max_rel_residual) << "," << csv_num(r.sol.E)
            << "," << csv_num(r.E_reference) << "," << csv_num(r.E_diff) << ","
            << match_word(r.E_match) << "," << csv_num(r.verdict.ode.max_rel_residual) << ","
            << verdict_word(r.verdict.ode.pass) << "\n";
      }
    }
    if (json)
      out << ordered_json{{"table", "table1"}, {"version", reference::kVersion}, {"rows", arr},
                          {"pass", ok}}
                 .dump(2)
          << "\n";
  } else {
    const auto rows = reproduce_third_root_table(c.threshold);
    const std::string status(reference::status_name(reference::kThirdRootConstraintStatus));
    ordered_json arr = ordered_json::array();
    if (!json)
      out << "n_r,kappa,label,label_reference,a4,a5,a4_reference,a5_reference,a4_abs_diff,"
             "a5_abs_diff,constraint_status,reference_ode_residual,E,E_reference,E_abs_diff,"
             "E_verdict,ode_residual,ode_verdict\n";
    for (const auto& r : rows) {
      ok = ok && r.E_match && r.verdict.pass();
      if (json) {
        arr.push_back({{"n_r", r.ref.n_r},
                       {"kappa", r.ref.kappa},
                       {"label", r.label},
                       {"label_reference", std::string(r.ref.label)},
                       {"a4", num(r.sol.a4)},
                       {"a5", num(r.sol.a5)},
                       {"a4_reference", num(r.ref.a4)},
                       {"a5_reference", num(r.ref.a5)},
                       {"a4_abs_diff", num(r.a4_diff)},
                       {"a5_abs_diff", num(r.a5_diff)},
                       {"constraint_status", status},
                       {"reference_ode_residual", num(r.reference_residual.max_rel_residual)},
                       {"E", num(r.sol.E)},
                       {"E_reference", num(r.ref.energy)},
                       {"E_abs_diff", num(r.E_diff)},
                       {"E_verdict", match_word(r.E_match)},
                       {"ode_residual", num(r.verdict.ode.max_rel_residual)},
                       {"ode_verdict", verdict_word(r.verdict.ode.pass)}});
      } else {
        out << r.ref.n_r << "," << r.ref.kappa << "," << r.label << "," << r.ref.label << ","
            << csv_num(r.sol.a4) << "," << csv_num(r.sol.a5) << "," << csv_num(r.ref.a4) << ","
            << csv_num(r.ref.a5) << "," << csv_num(r.a4_diff) << "," << csv_num(r.a5_diff)
            << "," << status << "," << csv_num(r.reference_residual.max_rel_residual) << ","
            << csv_num(r.sol.E) << "," << csv_num(r.ref.energy) << "," << csv_num(r.E_diff)
            << "," << match_word(r.E_match) << "," << csv_num(r.verdict.ode.max_rel_residual)
            << "," << verdict_word(r.verdict.ode.pass) << "\n";
      }
    }
    if (json)
      out << ordered_json{{"table", "table2"}, {"version", reference::kVersion}, {"rows", arr},
                          {"pass", ok}}
                 .dump(2)
          << "\n";
  }
  return ok ? kExitOk : kExitVerify;
}

inline int cmd_wavefunction(const RunConfig& c, std::ostream& out) {
  const SolvedState s = solve(c);
  const WavefunctionGrid wf = s.wavefunction(log_grid(c.r_min, c.r_max, c.points));
  const bool dirac = s.family != Family::NonRel;
  const Format f = c.format.value_or(Format::Csv);
  if (f == Format::Json) {
    ordered_json j;
    j["family"] = family_name(s.family);
    j["n_r"] = *c.n_r;
    if (dirac)
      j["kappa"] = *c.kappa;
    else
      j["ell"] = *c.ell;
    j["E"] = num(s.energy());
    j["constant"] = num(wf.constant);
    j["norm"] = {{"integral", num(wf.norm.integral)},
                 {"cutoff", num(wf.norm.cutoff)},
                 {"tail_bound", num(wf.norm.tail_bound)}};
    j["interior_nodes"] = sign_changes(wf.F);
    j["r"] = num_array(wf.r);
    j[dirac ? "F" : "phi"] = num_array(wf.F);
    if (dirac) j["G"] = num_array(wf.G);
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  const char sep = f == Format::Csv ? ',' : ' ';
  out << "r" << sep << (dirac ? "F" : "phi");
  if (dirac) out << sep << "G";
  out << "\n";
  for (std::size_t i = 0; i < wf.r.size(); ++i) {
    out << csv_num(wf.r[i]) << sep << csv_num(wf.F[i]);
    if (dirac) out << sep << csv_num(wf.G[i]);
    out << "\n";
  }
  return kExitOk;
}

inline int cmd_potential(const RunConfig& c, std::ostream& out) {
  const SolvedState s = solve(c);
  const PotentialSpec spec = s.potential();
  const std::vector<double> grid = log_grid(c.r_min, c.r_max, c.points);
  std::vector<double> V, Veff;
  for (double r : grid) {
    V.push_back(eval_potential(spec, r));
    if (s.family == Family::NonRel) {
      const double l = *c.ell;
      Veff.push_back(l * (l + 1.0) / (r * r) + V.back());
    } else {
      Veff.push_back(eval_effective_potential(spec, DiracState{*c.n_r, *c.kappa, c.mu},
                                              s.energy(), r));
    }
  }
  const Format f = c.format.value_or(Format::Csv);
  if (f == Format::Json) {
    ordered_json j;
    j["family"] = family_name(s.family);
    j["E"] = num(s.energy());
    ordered_json coeffs = ordered_json::array();
    for (int p = 1; p <= spec.count(); ++p) coeffs.push_back(num(spec.coeff(p)));
    j["coefficients"] = coeffs;
    j["r"] = num_array(grid);
    j["V"] = num_array(V);
    j["V_eff"] = num_array(Veff);
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  const char sep = f == Format::Csv ? ',' : ' ';
  out << "r" << sep << "V" << sep << "V_eff\n";
  for (std::size_t i = 0; i < grid.size(); ++i)
    out << csv_num(grid[i]) << sep << csv_num(V[i]) << sep << csv_num(Veff[i]) << "\n";
  return kExitOk;
}

inline int cmd_expect(const RunConfig& c, std::ostream& out) {
  const ExpectationReport rep =
      expectation_values(SchrodingerState{*c.n_r, *c.ell}, *c.a1, *c.a2);
  ordered_json j;
  j["family"] = "nonrel";
  j["n_r"] = rep.state.n_r;
  j["ell"] = rep.state.ell;
  j["a"] = {{"a1", num(rep.a1)}, {"a2", num(rep.a2)}};
  j["E"] = num(rep.Eprime);
  j["r^-3/2"] = num(rep.r_minus_three_halves);
  ordered_json arr = ordered_json::array();
  for (const auto& e : rep.entries)
    arr.push_back({{"observable", e.observable},
                   {"parameter", e.parameter},
                   {"finite_difference", num(e.hft_value)},
                   {"quadrature", num(e.quadrature)},
                   {"relative_difference", num(e.hft_vs_quadrature)},
                   {"dE_dq", num(e.derivative)},
                   {"constraint_slope", num(e.constraint_slope)},
                   {"generator", num(e.generator)},
                   {"dE_dq_vs_generator", num(e.derivative_vs_generator)},
                   {"printed_closed_form", num(e.printed)},
                   {"printed_vs_quadrature", num(e.printed_vs_quadrature)}});
  j["expectations"] = arr;
  out << j.dump(2) << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Verification.
// ---------------------------------------------------------------------------

namespace detail {

inline double get_num(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw UsageError(std::string("input field '") + key + "' missing or not a number");
  return j[key].get<double>();
}

inline int get_int(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer())
    throw UsageError(std::string("input field '") + key + "' missing or not an integer");
  return j[key].get<int>();
}

inline std::vector<double> get_array(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array())
    throw UsageError(std::string("input field '") + key + "' missing or not an array");
  std::vector<double> v;
  for (const auto& x : j[key]) {
    if (!x.is_number()) throw UsageError(std::string("input field '") + key + "' not numeric");
    v.push_back(x.get<double>());
  }
  return v;
}

inline const ordered_json& get_object(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_object())
    throw UsageError(std::string("input field '") + key + "' missing or not an object");
  return j[key];
}

}  // namespace detail

/// Rebuilds a solved state from solve output without re-running the solver.
inline SolvedState state_from_json(const ordered_json& j) {
  if (!j.is_object()) throw UsageError("input must be a JSON object");
  if (!j.contains("family") || !j["family"].is_string())
    throw UsageError("input field 'family' missing");
  const auto fam = parse_family(j["family"].get<std::string>());
  if (!fam) throw UsageError("input field 'family' must be n2, n3 or nonrel");
  const ordered_json& a = detail::get_object(j, "a");
  const ordered_json& con = detail::get_object(j, "constrained");
  const double E = detail::get_num(j, "E");
  const std::vector<double> roots = detail::get_array(j, "roots");
  SolvedState s;
  s.family = *fam;
  if (*fam == Family::NonRel) {
    NonRelSolution q;
    q.state = SchrodingerState{detail::get_int(j, "n_r"), detail::get_int(j, "ell")};
    q.state.validate();
    q.a1 = detail::get_num(a, "a1");
    q.a2 = detail::get_num(a, "a2");
    q.a3 = detail::get_num(con, "a3");
    if (!(E < 0.0)) throw UsageError("nonrel energy must be negative");
    q.Eprime = E;
    q.s = std::sqrt(-E);
    q.n = q.state.principal();
    q.roots = roots;
    q.energy_residual = energy_residual_nonrel(q.s, q.n, q.a1, q.a2);
    q.bae_residual = bethe_max_residual(bethe_field_nonrel(q.state.ell, q.s, q.a1), roots);
    s.nonrel = q;
    return s;
  }
  const DiracState st{detail::get_int(j, "n_r"), detail::get_int(j, "kappa"),
                      detail::get_num(j, "mu")};
  st.validate();
  if (!(std::abs(E) < st.mu)) throw UsageError("energy must lie inside (-mu, mu)");
  if (static_cast<int>(roots.size()) != st.n_r)
    throw UsageError("number of roots must equal n_r");
  if (*fam == Family::N2) {
    QESSolutionN2 q;
    q.state = st;
    q.a1 = detail::get_num(a, "a1");
    q.a2 = detail::get_num(a, "a2");
    q.a3 = detail::get_num(con, "a3");
    q.E = E;
    q.energies = {E};
    q.k = std::sqrt((st.mu - E) * (st.mu + E));
    q.p = st.mu + E;
    q.b2 = -q.k;
    q.b1 = 2.0 * q.a1 * q.p / q.k;
    q.roots = roots;
    q.diagnostics.energy_residual = energy_residual_n2(E, st, q.a1, q.a2);
    q.diagnostics.bae_residual = bethe_max_residual(bethe_field_n2(st, E, q.a1), roots);
    s.n2 = q;
  } else {
    QESSolutionN3 q;
    q.state = st;
    q.a1 = detail::get_num(a, "a1");
    q.a2 = detail::get_num(a, "a2");
    q.a3 = detail::get_num(a, "a3");
    q.a4 = detail::get_num(con, "a4");
    q.a5 = detail::get_num(con, "a5");
    q.E = E;
    q.energies = {E};
    q.p = st.mu + E;
    q.b = b_coefficients(E, st, q.a1, q.a2);
    q.roots = roots;
    q.diagnostics.energy_residual = energy_residual_n3(E, st, q.a1, q.a2, q.a3);
    q.diagnostics.bae_residual = bethe_max_residual(bethe_field_n3(st, q.b), roots);
    s.n3 = q;
  }
  return s;
}

inline std::string read_all(std::istream& in) {
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline int cmd_verify_input(const RunConfig& c, std::ostream& out, std::istream& in) {
  std::string text;
  if (c.input == "-") {
    text = read_all(in);
  } else {
    std::ifstream f(c.input);
    if (!f) throw UsageError("cannot read input file " + c.input);
    text = read_all(f);
  }
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("input is not valid JSON: ") + e.what());
  }
  const SolvedState s = state_from_json(j);
  const StateVerdict v = s.verdict(c.threshold);
  ordered_json r;
  r["mode"] = "input";
  r["family"] = family_name(s.family);
  r["E"] = num(s.energy());
  r["ode"] = residual_json(v.ode);
  if (v.spinor_checked) r["spinor"] = residual_json(v.spinor);
  r["bae_residual"] = num(v.bae_residual);
  r["bae_pass"] = v.bae_pass();
  r["coefficient_defect"] = num(v.coefficient_defect);
  r["coefficient_pass"] = v.coefficient_pass();
  r["pass"] = v.pass();
  out << r.dump(2) << "\n";
  return v.pass() ? kExitOk : kExitVerify;
}

inline int cmd_verify_suite(const RunConfig& c, std::ostream& out) {
  const SuiteReport rep = run_suite(c.threshold);
  {
    std::ofstream f(c.errata_path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + c.errata_path);
    f << render_errata_markdown(rep.errata, rep.threshold);
  }
  ordered_json r;
  r["mode"] = "suite";
  r["threshold"] = num(rep.threshold);
  int checked = 0;
  double worst_ode = 0.0, worst_spinor = 0.0, worst_bae = 0.0, worst_coef = 0.0;
  auto absorb = [&](const StateVerdict& v) {
    ++checked;
    worst_ode = std::max(worst_ode, v.ode.max_rel_residual);
    if (v.spinor_checked) worst_spinor = std::max(worst_spinor, v.spinor.max_rel_residual);
    worst_bae = std::max(worst_bae, v.bae_residual);
    worst_coef = std::max(worst_coef, v.coefficient_defect);
  };
  for (const auto& row : rep.square_root_rows) absorb(row.verdict);
  for (const auto& row : rep.third_root_rows) absorb(row.verdict);
  for (const auto& v : rep.extra_states) absorb(v);
  r["states_checked"] = checked;
  r["worst"] = {{"ode_residual", num(worst_ode)},
                {"spinor_residual", num(worst_spinor)},
                {"bae_residual", num(worst_bae)},
                {"coefficient_defect", num(worst_coef)}};
  r["degeneracy_violations"] =
      static_cast<int>(rep.degeneracy_n2.size() + rep.degeneracy_n3.size());
  r["failures"] = rep.failures();
  ordered_json ids = ordered_json::array();
  for (const auto& e : rep.errata) ids.push_back(e.id);
  r["errata"] = ids;
  r["errata_path"] = c.errata_path;
  r["pass"] = rep.pass();
  out << r.dump(2) << "\n";
  return rep.pass() ? kExitOk : kExitVerify;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out, std::istream& in) {
  return c.input.empty() ? cmd_verify_suite(c, out) : cmd_verify_input(c, out, in);
}

// ---------------------------------------------------------------------------
// Dispatch.
// ---------------------------------------------------------------------------

inline ordered_json error_json(const char* kind, const std::string& message) {
  return ordered_json{{"error", {{"kind", kind}, {"message", message}}}};
}

inline int dispatch(const RunConfig& c, std::ostream& out, std::istream& in) {
  switch (c.command) {
    case Command::Solve: return cmd_solve(c, out);
    case Command::Table: return cmd_table(c, out);
    case Command::Wavefunction: return cmd_wavefunction(c, out);
    case Command::Potential: return cmd_potential(c, out);
    case Command::Expect: return cmd_expect(c, out);
    case Command::Verify: return cmd_verify(c, out, in);
  }
  return kExitUsage;
}

/// Validates, runs and routes output. Errors become one JSON object on `err`.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err,
               std::istream& in = std::cin) {
  try {
    validate(c);
    std::ostringstream buf;
    const int code = dispatch(c, buf, in);
    if (c.output.empty() || c.output == "-") {
      out << buf.str();
    } else {
      std::ofstream f(c.output, std::ios::binary);
      if (!f) throw UsageError("cannot write " + c.output);
      f << buf.str();
    }
    return code;
  } catch (const UsageError& e) {
    err << error_json(e.kind(), e.what()).dump() << "\n";
    return kExitUsage;
  } catch (const SolverFailure& e) {
    ordered_json j = error_json(e.kind(), e.what());
    j["error"]["best_residual"] = num(e.best_residual());
    err << j.dump() << "\n";
    return kExitSolver;
  } catch (const Error& e) {
    err << error_json(e.kind(), e.what()).dump() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    err << error_json("internal_error", e.what()).dump() << "\n";
    return kExitSolver;
  }
}

}  // namespace qes::cli
