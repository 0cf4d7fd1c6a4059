// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "catch_amalgamated.hpp"
#include "qes/potential.hpp"

using namespace qes;
using Catch::Approx;

TEST_CASE("state principal numbers", "[potential]") {
  const DiracState s{1, 2, 1.0};
  CHECK(s.n_prime() == 7);
  CHECK(s.n_star() == 10);
  CHECK(s.principal(2) == s.n_prime());
  CHECK(s.principal(3) == s.n_star());
  CHECK(SchrodingerState{1, 2}.principal() == 7);
}

TEST_CASE("state validation", "[potential]") {
  CHECK_THROWS_AS((DiracState{-1, 1, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((DiracState{0, 0, 1.0}.validate()), DomainError);
  CHECK_THROWS_AS((DiracState{0, 1, 0.0}.validate()), DomainError);
  CHECK_THROWS_AS((SchrodingerState{0, -1}.validate()), DomainError);
  CHECK_NOTHROW((DiracState{3, 4, 2.0}.validate()));
}

TEST_CASE("spectroscopic labels", "[potential]") {
  CHECK(spectroscopic_label({0, 1, 1.0}) == "1s1/2");
  CHECK(spectroscopic_label({1, 2, 1.0}) == "2p3/2");
  CHECK(spectroscopic_label({1, 4, 1.0}) == "2f7/2");
  CHECK(spectroscopic_label({2, 5, 1.0}) == "3g9/2");
}

TEST_CASE("sign pattern of the square-root family", "[potential]") {
  const PotentialSpec v = PotentialSpec::square_root(1.0, 2.0, 3.0);
  CHECK(v.sign(1) == -1);
  CHECK(v.sign(2) == +1);
  CHECK(v.sign(3) == +1);
  const double r = 4.0;
  CHECK(eval_potential(v, r) == Approx(-1.0 / 2.0 + 2.0 / 4.0 + 3.0 / 8.0).epsilon(1e-15));
}

TEST_CASE("sign pattern of the third-root family", "[potential]") {
  const PotentialSpec v = PotentialSpec::third_root(1.0, 1.0, 1.0, 1.0, 1.0);
  const double r = 8.0;  // x = 2
  const double expected = -0.5 + 0.25 - 0.125 + 0.0625 + 0.03125;
  CHECK(eval_potential(v, r) == Approx(expected).epsilon(1e-15));
}

TEST_CASE("constrained coefficients must be set before evaluation", "[potential]") {
  const PotentialSpec v = PotentialSpec::square_root(1.0, 1.0);
  CHECK_FALSE(v.complete());
  CHECK_THROWS_AS(v.coeff(3), PreconditionError);
  CHECK_THROWS_AS(eval_potential(v, 1.0), PreconditionError);
}

TEST_CASE("free coefficients must be positive", "[potential]") {
  CHECK_THROWS_AS(PotentialSpec::square_root(-1.0, 1.0, 1.0).validate(), DomainError);
  CHECK_THROWS_AS((PotentialSpec{2, {1.0, 1.0}}.validate()), DomainError);
  CHECK_NOTHROW(PotentialSpec::third_root(1.0, 2.0, 3.0).validate());
}

TEST_CASE("effective potential", "[potential]") {
  const PotentialSpec v = PotentialSpec::square_root(1.0, 1.0, 2.0);
  const DiracState s{0, 2, 1.0};
  const double E = 0.3, r = 1.7;
  const double expected = 6.0 / (r * r) + 2.0 * (1.0 + E) * eval_potential(v, r);
  CHECK(eval_effective_potential(v, s, E, r) == Approx(expected).epsilon(1e-15));
}

TEST_CASE("bounded effective potential has a well", "[potential]") {
  // ground-state coefficients for mu = 1, a1 = a2 = 1
  const PotentialSpec v = PotentialSpec::square_root(1.0, 1.0, 2.531648042);
  const auto pts = potential_grid(v, {0, 1, 1.0}, 0.7226, 1e-2, 50.0, 400);
  double lo = pts.front().second;
  for (const auto& [r, y] : pts) lo = std::min(lo, y);
  CHECK(pts.front().second > 0.0);
  CHECK(lo < 0.0);
  CHECK(pts.back().second < 0.0);
  CHECK(pts.back().second > lo);
}

TEST_CASE("log grid", "[potential]") {
  const auto g = default_grid();
  REQUIRE(g.size() == 2000);
  CHECK(g.front() == Approx(1e-2).epsilon(1e-14));
  CHECK(g.back() == Approx(50.0).epsilon(1e-14));
  const double ratio = g[1] / g[0];
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(g[i] / g[i - 1] == Approx(ratio).epsilon(1e-12));
  CHECK_THROWS_AS(log_grid(0.0, 1.0, 10), DomainError);
}
