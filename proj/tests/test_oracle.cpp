// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "catch_amalgamated.hpp"
#include "qes/qes.hpp"

using namespace qes;
using Catch::Approx;

TEST_CASE("residual oracle accepts solved states and rejects perturbations", "[oracle][residual]") {
  const QESSolutionN2 s = solve_state_n2({1, 2, 1.0}, 1.0, 1.0);
  const WavefunctionGrid wf = wavefunction_n2(s);
  const ResidualReport ok = ode_residual(wf.form, s.potential(), s.state, s.E);
  CHECK(ok.pass);
  CHECK(ok.max_rel_residual < 1e-9);
  CHECK(ok.grid_count == 2000);
  CHECK(ok.checked + ok.skipped == 2000);

  CHECK_FALSE(ode_residual(wf.form, s.potential(), s.state, s.E * (1.0 + 1e-4)).pass);
  CHECK_FALSE(n2_residual_with(s, s.a3 + 0.1).pass);
  CHECK_THROWS_AS(ode_residual(wf.form, PotentialSpec::square_root(1.0, 1.0), s.state, s.E),
                  PreconditionError);
}

TEST_CASE("residual oracle on the third-root family", "[oracle][residual]") {
  const QESSolutionN3 s = solve_state_n3({1, 1, 1.0}, 2.0, 2.0, 2.0);
  CHECK(n3_residual_with(s, s.a4, s.a5).pass);
  CHECK_FALSE(n3_residual_with(s, s.a4_printed, s.a5_printed).pass);
  CHECK_FALSE(n3_residual_with(s, s.a4, s.a5 + 1e-3).pass);
}

TEST_CASE("spinor round trip", "[oracle][spinor]") {
  const QESSolutionN2 s = solve_state_n2({0, 1, 1.0}, 1.0, 1.0);
  const WavefunctionGrid wf = wavefunction_n2(s);
  const PotentialSpec v = s.potential();
  CHECK(spinor_roundtrip(wf, v, s.state, s.E).pass);

  std::vector<double> G = wf.G;
  for (double& g : G) g *= 1.01;
  CHECK_FALSE(spinor_roundtrip(wf.r, wf.F, G, v, s.state.kappa, s.state.mu, s.E).pass);
  CHECK_FALSE(spinor_roundtrip(wf.r, wf.F, wf.G, v, -s.state.kappa, s.state.mu, s.E).pass);

  std::vector<double> shortF(wf.F.begin(), wf.F.end() - 1);
  CHECK_THROWS_AS(spinor_roundtrip(wf.r, shortF, wf.G, v, 1, 1.0, s.E), PreconditionError);
  std::vector<double> linear(wf.r.size());
  for (std::size_t i = 0; i < linear.size(); ++i) linear[i] = 0.01 + 0.025 * i;
  CHECK_THROWS_AS(spinor_roundtrip(linear, wf.F, wf.G, v, 1, 1.0, s.E), PreconditionError);
}

TEST_CASE("log-grid derivative", "[oracle][spinor]") {
  const auto r = log_grid(0.1, 10.0, 400);
  std::vector<double> f(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) f[i] = std::sin(r[i]) * r[i];
  const auto d = log_grid_derivative(r, f);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::isnan(d[i]));
    CHECK(std::isnan(d[d.size() - 1 - i]));
  }
  for (std::size_t i = 5; i + 5 < r.size(); ++i)
    CHECK(d[i] == Approx(std::cos(r[i]) * r[i] + std::sin(r[i])).margin(1e-9));
}

TEST_CASE("coefficient oracle", "[oracle][coefficients]") {
  SECTION("ground state polynomial is 1") {
    const QESSolutionN2 s = solve_state_n2({0, 3, 1.0}, 1.0, 1.0);
    const OracleResult r = coefficient_oracle(oracle_problem_n2(s.state, s.E, s.a1));
    REQUIRE(r.solutions.size() == 1);
    CHECK(r.solutions[0].poly == poly::Coeffs{1.0});
    REQUIRE(r.solutions[0].constrained.size() == 1);
    CHECK(r.solutions[0].constrained[0] == Approx(s.a3).epsilon(1e-10));
  }
  SECTION("first excited root matches the Bethe root") {
    const QESSolutionN2 s = solve_state_n2({1, 1, 1.0}, 1.0, 1.0);
    const OracleResult r = coefficient_oracle(oracle_problem_n2(s.state, s.E, s.a1));
    bool found = false;
    for (const auto& sol : r.solutions)
      if (sol.all_positive) {
        found = true;
        CHECK(-sol.poly[0] == Approx(s.roots[0]).epsilon(1e-9));
      }
    CHECK(found);
  }
  SECTION("Vieta agreement with the Bethe roots up to n_r = 4") {
    for (int nr = 0; nr <= 4; ++nr) {
      const QESSolutionN2 s2 = solve_state_n2({nr, 2, 1.0}, 1.0, 1.0);
      CHECK(coefficient_agreement(oracle_problem_n2(s2.state, s2.E, s2.a1), s2.roots) < 1e-8);
      const QESSolutionN3 s3 = solve_state_n3({nr, 2, 1.0}, 2.0, 2.0, 2.0);
      CHECK(coefficient_agreement(oracle_problem_n3(s3.state, s3.E, s3.a1, s3.a2), s3.roots) < 1e-8);
    }
  }
  SECTION("wrong roots disagree") {
    const QESSolutionN2 s = solve_state_n2({2, 1, 1.0}, 1.0, 1.0);
    std::vector<double> off = s.roots;
    off[0] *= 1.001;
    CHECK(coefficient_agreement(oracle_problem_n2(s.state, s.E, s.a1), off) > 1e-5);
  }
  SECTION("input validation") {
    OracleProblem pb;
    pb.family = 4;
    CHECK_THROWS_AS(coefficient_oracle(pb), DomainError);
    pb.family = 2;
    pb.free = {1.0};
    CHECK_THROWS_AS(coefficient_oracle(pb), DomainError);
  }
}

TEST_CASE("state verdicts", "[oracle]") {
  const StateVerdict v2 = verify_state(solve_state_n2({2, 3, 1.0}, 1.0, 1.0));
  CHECK(v2.pass());
  CHECK(v2.spinor_checked);
  CHECK(v2.interior_nodes == 2);
  const QESSolutionN3 s3 = solve_state_n3({2, 3, 1.0}, 1.0, 1.0, 1.0);
  const StateVerdict v3 = verify_state(s3);
  CHECK(v3.pass());
  int on_grid = 0;  // r = x^3 <= 50
  for (double x : s3.roots) on_grid += x * x * x < 50.0;
  CHECK(on_grid == 1);
  CHECK(v3.interior_nodes == on_grid);
  const StateVerdict vn = verify_state(solve_state_nonrel({1, 0}, 2.0, 1.0));
  CHECK(vn.pass());
  CHECK_FALSE(vn.spinor_checked);
}

TEST_CASE("degeneracy audits", "[oracle][degeneracy]") {
  CHECK(degeneracy_audit_n2(1.0, 1.0, 1.0, 3, 4).empty());
  CHECK(degeneracy_audit_n3(2.0, 2.0, 2.0, 1.0, 3, 4).empty());
  const auto& t = reference::square_root_table();
  // (0,2) and (2,1) share a radical
  CHECK(t[1].energy.value() == Approx(t[10].energy.value()).epsilon(1e-15));
  CHECK(t[1].energy.A == t[10].energy.A);
}

TEST_CASE("full suite is green", "[oracle][suite]") {
  const SuiteReport rep = run_suite();
  CHECK(rep.failures() == 0);
  CHECK(rep.errata.size() == 13);
  CHECK(rep.square_root_rows.size() == 15);
  CHECK(rep.third_root_rows.size() == 15);
  const std::string md = render_errata_markdown(rep.errata, rep.threshold);
  CHECK(md.rfind("# Errata", 0) == 0);
  for (const auto& e : rep.errata) CHECK(md.find("## " + e.id) != std::string::npos);
}
