// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"
#include "qes/nonrel.hpp"
#include "qes/solver_n2.hpp"
#include "qes/verify.hpp"

using namespace qes;
using Catch::Approx;

TEST_CASE("ground state at a1 = a2 = 1", "[nonrel]") {
  const NonRelSolution s = solve_state_nonrel({0, 0}, 1.0, 1.0);
  CHECK(s.s == Approx(0.37743883312334636).epsilon(1e-14));
  CHECK(s.Eprime == Approx(-0.37743883312334636 * 0.37743883312334636).epsilon(1e-13));
  CHECK(s.Eprime == Approx(-0.1424600727).epsilon(1e-9));
  CHECK(s.a3 == Approx(1.9870769358671192).epsilon(1e-12));
  CHECK(std::abs(s.energy_residual) < 1e-13);
  CHECK(s.roots.empty());
}

TEST_CASE("cubic for s", "[nonrel]") {
  const double n = 5.0, a1 = 1.7, a2 = 0.6;
  const auto s = nonrel_s(n, a1, a2);
  REQUIRE(s);
  CHECK(n * *s * *s * *s + a2 * *s * *s - a1 * a1 / 4.0 == Approx(0.0).margin(1e-13));
  CHECK(std::abs(energy_residual_nonrel(*s, n, a1, a2)) < 1e-12);
  CHECK_FALSE(nonrel_s(n, 0.0, 1.0));
  CHECK(*nonrel_s(4.0, 0.0, -2.0) == Approx(0.5));
  CHECK_THROWS_AS(nonrel_s(0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(energy_residual_nonrel(0.0, 1.0, 1.0, 1.0), DomainError);
}

TEST_CASE("printed energy closed form disagrees with the cubic", "[nonrel]") {
  const NonRelSolution s = solve_state_nonrel({0, 0}, 1.0, 1.0);
  CHECK(s.printed.discrepancy);
  CHECK(std::abs(s.printed.residual_at_s) > 1e-3);
  CHECK(std::abs(s.printed.closed_form_energy - s.Eprime) > 1e-3);
}

TEST_CASE("residual oracle adjudicates the linear exponent sign", "[nonrel]") {
  for (int nr = 0; nr <= 2; ++nr)
    for (int l = 0; l <= 2; ++l) {
      const NonRelSolution s = solve_state_nonrel({nr, l}, 1.0, 1.0);
      const PotentialSpec v = s.potential();
      INFO("(" << nr << "," << l << ")");
      CHECK(ode_residual(closed_form_nonrel(s, +1), v, s.state, s.Eprime).pass);
      CHECK_FALSE(ode_residual(closed_form_nonrel(s, -1), v, s.state, s.Eprime).pass);
      CHECK(s.bae_residual < 1e-10);
    }
}

TEST_CASE("full verification of nonrel states", "[nonrel]") {
  for (double a1 : {0.5, 1.0, 2.0})
    for (int nr = 0; nr <= 2; ++nr) {
      const NonRelSolution s = solve_state_nonrel({nr, 1}, a1, 1.0);
      const StateVerdict v = verify_state(s);
      CHECK(v.pass());
      // sign changes visible on the default grid, r <= 50
      int on_grid = 0;
      for (double x : s.roots) on_grid += x * x < 50.0;
      CHECK(v.interior_nodes == on_grid);
    }
}

TEST_CASE("Coulomb limit", "[nonrel]") {
  for (int nr = 0; nr <= 2; ++nr)
    for (int l = 0; l <= 2; ++l) {
      const CoulombCheck c = coulomb_limit_check(-1.5, {nr, l});
      const double nh = nr + l + 1.0;
      INFO("(" << nr << "," << l << ")");
      CHECK(c.exact_energy == Approx(-2.25 / (4.0 * nh * nh)).epsilon(1e-15));
      CHECK(c.cubic_energy == Approx(c.exact_energy).epsilon(1e-12));
      CHECK(c.residual.pass);
      CHECK_FALSE(c.claimed_residual.pass);
      CHECK(c.claim_discrepancy);
      CHECK(c.oracle_polynomial_defect < 1e-10);
    }
  CHECK_THROWS_AS(coulomb_limit_check(1.0, {0, 0}), DomainError);
}

TEST_CASE("energy derivatives agree with the full generator", "[nonrel]") {
  for (double a1 : {0.5, 1.0, 2.0})
    for (double a2 : {0.5, 1.0, 2.0}) {
      const ExpectationReport rep = expectation_values({0, 0}, a1, a2);
      REQUIRE(rep.entries.size() == 3);
      for (const auto& e : rep.entries) {
        INFO(e.observable << " by " << e.parameter << " at a1 " << a1 << " a2 " << a2);
        CHECK(e.derivative_vs_generator < 1e-5);
        CHECK(e.quadrature > 0.0);
      }
      CHECK(rep.r_minus_three_halves > 0.0);
    }
}

TEST_CASE("binding deepens with a1", "[nonrel]") {
  for (int l = 0; l <= 2; ++l) {
    double prev = 0.0;
    for (double a1 = 0.25; a1 <= 4.0; a1 += 0.25) {
      const double E = solve_energy_nonrel({1, l}, a1, 1.0);
      CHECK(E < prev);
      prev = E;
    }
  }
}

TEST_CASE("Dirac square-root residual maps onto the nonrel cubic", "[nonrel][property]") {
  std::mt19937 rng(9001);
  std::uniform_real_distribution<double> S(0.05, 3.0), A(0.1, 4.0);
  std::uniform_int_distribution<int> NR(0, 4), L(0, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const double s = S(rng), a1 = A(rng), a2 = A(rng);
    const DiracState st{NR(rng), L(rng), 0.25 + s * s};
    const double lhs = energy_residual_n2(0.25 - s * s, st, a1, a2);
    const double rhs = energy_residual_nonrel(s, st.n_prime(), a1, a2);
    CHECK(lhs == Approx(rhs).epsilon(1e-10).margin(1e-10));
  }
}
