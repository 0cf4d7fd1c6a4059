// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"
#include "qes/reference_tables.hpp"
#include "qes/solver_n2.hpp"

using namespace qes;
using Catch::Approx;

namespace {
bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }
}  // namespace

TEST_CASE("ground state at a1 = a2 = mu = 1", "[n2]") {
  const QESSolutionN2 s = solve_state_n2({0, 1, 1.0}, 1.0, 1.0);
  CHECK(close(s.E, 0.72261633718056695, 1e-13));
  CHECK(close(s.a3, 2.5316480419479195, 1e-12));
  CHECK(s.roots.empty());
  CHECK(s.k == Approx(std::sqrt(1.0 - s.E * s.E)));
  CHECK(s.p == Approx(1.0 + s.E));
  CHECK(s.b2 == Approx(-s.k));
  CHECK(std::abs(s.diagnostics.energy_residual) < 1e-12);
}

TEST_CASE("excited states at a1 = a2 = mu = 1", "[n2]") {
  const QESSolutionN2 s1 = solve_state_n2({1, 1, 1.0}, 1.0, 1.0);
  REQUIRE(s1.roots.size() == 1);
  CHECK(close(s1.roots[0], 4.4965211261715066, 1e-10));
  CHECK(close(s1.a3, 2.5096064753662257, 1e-10));
  CHECK(close(s1.E, 0.74448022977892048, 1e-13));
  CHECK(s1.diagnostics.bae_residual < 1e-10);

  const QESSolutionN2 s2 = solve_state_n2({2, 1, 1.0}, 1.0, 1.0);
  REQUIRE(s2.roots.size() == 2);
  CHECK(close(s2.roots[0], 4.1915458331225999, 1e-10));
  CHECK(close(s2.roots[1], 5.3658179109944575, 1e-10));
  CHECK(s2.diagnostics.bae_residual < 1e-10);
}

TEST_CASE("energies equal the stored closed-form radicals", "[n2]") {
  for (const auto& row : reference::square_root_table()) {
    const auto E = solve_energy_n2({row.n_r, row.kappa, 1.0}, 1.0, 1.0);
    REQUIRE(E.size() == 1);
    INFO("(" << row.n_r << "," << row.kappa << ")");
    CHECK(std::abs(E.front() - row.energy.value()) < 1e-10);
  }
}

TEST_CASE("degenerate labels share one radical", "[n2]") {
  // (n_r, kappa) and (n_r + 2, kappa - 1) have the same n'
  const auto& t = reference::square_root_table();
  CHECK(t[1].energy.value() == t[10].energy.value());
  CHECK(solve_energy_n2({0, 2, 1.0}, 1.0, 1.0).front() ==
        Approx(solve_energy_n2({2, 1, 1.0}, 1.0, 1.0).front()).epsilon(1e-14));
}

TEST_CASE("ground-state a3 matches the stored decimals", "[n2]") {
  for (const auto& row : reference::square_root_table()) {
    if (row.n_r != 0) continue;
    const QESSolutionN2 s = solve_state_n2({row.n_r, row.kappa, 1.0}, 1.0, 1.0);
    CHECK(std::abs(s.a3 - row.a3) < 1e-8);
    CHECK(s.a3 == Approx(s.a3_printed).epsilon(1e-14));
  }
}

TEST_CASE("first-excited stored a3 follows the printed constraint", "[n2]") {
  for (const auto& row : reference::square_root_table()) {
    if (row.n_r != 1) continue;
    const QESSolutionN2 s = solve_state_n2({row.n_r, row.kappa, 1.0}, 1.0, 1.0);
    INFO("kappa " << row.kappa);
    CHECK(std::abs(s.a3_printed - row.a3) < 1e-8);
    CHECK(std::abs(s.a3 - row.a3) > 1e-3);
  }
}

TEST_CASE("energy cubic and its map to E", "[n2]") {
  const DiracState st{1, 2, 1.5};
  const auto c = energy_cubic_n2(st, 1.3, 0.4);
  const auto u = poly::positive_real_roots(c);
  REQUIRE(u.size() == 1);
  const double E = energy_from_u(u[0], st.mu);
  CHECK(E == Approx(solve_energy_n2(st, 1.3, 0.4).front()).epsilon(1e-13));
  CHECK(std::abs(energy_residual_n2(E, st, 1.3, 0.4)) < 1e-11);
}

TEST_CASE("zero-energy criticality", "[n2]") {
  const DiracState st{2, 3, 1.0};
  const double a2 = 0.8;
  const double a1 = std::sqrt((st.n_prime() + 2.0 * a2) * st.mu);
  CHECK(zero_energy_check_n2(st, a1, a2).holds);
  CHECK(std::abs(solve_state_n2(st, a1, a2).E) < 1e-12);
  CHECK_FALSE(zero_energy_check_n2(st, a1 * 1.01, a2).holds);
  CHECK(solve_state_n2(st, a1 * 1.01, a2).E < 0.0);
}

TEST_CASE("domain errors", "[n2]") {
  CHECK_THROWS_AS(solve_state_n2({0, 1, 1.0}, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(solve_state_n2({0, 1, 1.0}, 1.0, -1.0), DomainError);
  CHECK_THROWS_AS(solve_state_n2({0, 0, 1.0}, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(energy_residual_n2(1.0, {0, 1, 1.0}, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(bethe_field_n2({0, 1, 1.0}, -1.2, 1.0), DomainError);
}

TEST_CASE("random parameters give one admissible state with zero residuals", "[n2][property]") {
  std::mt19937 rng(424242);
  std::uniform_real_distribution<double> A(0.2, 3.0), M(0.3, 3.0);
  std::uniform_int_distribution<int> NR(0, 3), K(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    const DiracState st{NR(rng), K(rng), M(rng)};
    const double a1 = A(rng), a2 = A(rng);
    const QESSolutionN2 s = solve_state_n2(st, a1, a2);
    INFO("n_r " << st.n_r << " kappa " << st.kappa << " mu " << st.mu << " a1 " << a1 << " a2 " << a2);
    CHECK(s.energies.size() == 1);
    CHECK_FALSE(s.diagnostics.multiple_energies);
    CHECK(std::abs(s.E) < st.mu);
    CHECK(std::abs(s.diagnostics.energy_residual) < 1e-9 * std::max(1.0, a1 * a1));
    CHECK(s.roots.size() == static_cast<std::size_t>(st.n_r));
    CHECK(s.diagnostics.bae_residual < 1e-10);
    for (double x : s.roots) CHECK(x > 0.0);
    // energy grows with kappa
    CHECK(solve_energy_n2({st.n_r, st.kappa + 1, st.mu}, a1, a2).front() > s.E);
  }
}
