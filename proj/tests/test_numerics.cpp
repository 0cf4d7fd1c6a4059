// Copyright 2026 The qesdirac Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "catch_amalgamated.hpp"
#include "qes/bethe.hpp"
#include "qes/jet.hpp"
#include "qes/nonrel.hpp"
#include "qes/normalize.hpp"
#include "qes/polynomial.hpp"
#include "qes/quadrature.hpp"

using namespace qes;
using Catch::Approx;

TEST_CASE("polynomial evaluation and products", "[poly]") {
  const poly::Coeffs p{1.0, -3.0, 2.0};  // 2x^2 - 3x + 1
  CHECK(poly::eval(p, 2.0) == Approx(3.0));
  CHECK(poly::derivative(p) == poly::Coeffs{-3.0, 4.0});
  const poly::Coeffs q = poly::from_roots(std::vector<double>{1.0, 2.0});
  CHECK(q == poly::Coeffs{2.0, -3.0, 1.0});
  CHECK(poly::multiply(q, poly::Coeffs{1.0, 1.0}) == poly::Coeffs{2.0, -1.0, -2.0, 1.0});
}

TEST_CASE("companion roots recover positive roots", "[poly]") {
  std::mt19937 rng(20260101);
  std::uniform_real_distribution<double> U(0.1, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 5;
    std::vector<double> r(n);
    for (auto& x : r) x = U(rng);
    std::sort(r.begin(), r.end());
    bool separated = true;
    for (int i = 1; i < n; ++i) separated = separated && r[i] - r[i - 1] > 1e-2;
    if (separated) {
      const auto found = poly::positive_real_roots(poly::from_roots(r));
      REQUIRE(found.size() == r.size());
      for (int i = 0; i < n; ++i) CHECK(found[i] == Approx(r[i]).epsilon(1e-8));
    }
  }
}

TEST_CASE("bracketed scan finds roots the companion matrix misses", "[poly]") {
  // x^2 - 2x + (1 - 1e-12): two roots 1e-6 apart
  const poly::Coeffs c{1.0 - 1e-12, -2.0, 1.0};
  const auto r = poly::bracketed_positive_roots(c, 1e-7, 3.0);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == Approx(1.0 - 1e-6).epsilon(1e-10));
  CHECK(r[1] == Approx(1.0 + 1e-6).epsilon(1e-10));
}

TEST_CASE("Gauss-Legendre quadrature", "[quadrature]") {
  CHECK(quad::integrate([](double x) { return x * x; }, 0.0, 3.0) == Approx(9.0).epsilon(1e-14));
  CHECK(quad::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
        Approx(2.0).epsilon(1e-14));
  const double g = quad::integrate([](double x) { return std::exp(-x * x); }, -10.0, 10.0, 4);
  CHECK(g == Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  const auto& rule = quad::gauss_legendre(16);
  double w = 0.0;
  for (double x : rule.weights) w += x;
  CHECK(w == Approx(2.0).epsilon(1e-14));
}

TEST_CASE("jets carry exact first and second derivatives", "[jet]") {
  const double x0 = 0.7;
  const Jet x = Jet::variable(x0);
  const Jet f = pow(x, 2.5) * exp(-1.3 * x) / (x + 2.0);
  // reference by hand
  const double u = std::pow(x0, 2.5), up = 2.5 * std::pow(x0, 1.5), upp = 3.75 * std::pow(x0, 0.5);
  const double e = std::exp(-1.3 * x0), ep = -1.3 * e, epp = 1.69 * e;
  const double w = 1.0 / (x0 + 2.0), wp = -w * w, wpp = 2.0 * w * w * w;
  const double v = u * e * w;
  const double d = up * e * w + u * ep * w + u * e * wp;
  const double dd = upp * e * w + u * epp * w + u * e * wpp +
                    2.0 * (up * ep * w + up * e * wp + u * ep * wp);
  CHECK(f.v == Approx(v).epsilon(1e-14));
  CHECK(f.d == Approx(d).epsilon(1e-13));
  CHECK(f.dd == Approx(dd).epsilon(1e-12));
}

TEST_CASE("normalization", "[normalize]") {
  auto rho = [](double r) { return r * r * std::exp(-2.0 * r); };  // integral 1/4
  const NormReport rep = normalize(rho, 2);
  CHECK(rep.integral == Approx(0.25).epsilon(1e-12));
  CHECK(rep.constant == Approx(2.0).epsilon(1e-12));
  CHECK(rep.tail_bound < 1e-12);
  CHECK(rep.cutoff <= 50.0);

  SECTION("scaling the samples by c scales the norm by c^2") {
    const double c = 3.7;
    const NormReport scaled = normalize([&](double r) { return c * c * rho(r); }, 2);
    CHECK(scaled.integral == Approx(c * c * rep.integral).epsilon(1e-12));
  }
  SECTION("normalized density has unit norm") {
    const double k = rep.constant;
    const double n = radial_integral([&](double r) { return k * k * rho(r); }, 2, rep.cutoff);
    CHECK(std::abs(n - 1.0) < 1e-10);
  }
  SECTION("non-decaying density is rejected") {
    CHECK_THROWS_AS(normalize([](double r) { return 1.0 + r; }, 2), InvariantViolation);
  }
}

TEST_CASE("Bethe solver reproduces Laguerre zeros", "[bethe]") {
  // zeros of L_n^(a) satisfy sum 1/(x_i - x_j) = 1/2 - (a+1)/(2 x_i)
  for (int n = 1; n <= 5; ++n) {
    const double a = 1.5;
    const BetheField f{0.0, 0.0, 0.5, -(a + 1.0) / 2.0};
    const auto lag = poly::positive_real_roots(monic_laguerre(n, a, 1.0));
    REQUIRE(static_cast<int>(lag.size()) == n);
    const BetheResult res = solve_bethe(f, spread_seeds(a + n, n, 8));
    REQUIRE(res.converged);
    CHECK(res.residual < 1e-12);
    for (int i = 0; i < n; ++i) CHECK(res.roots[i] == Approx(lag[i]).epsilon(1e-10));
  }
}

TEST_CASE("Bethe residual definition", "[bethe]") {
  const BetheField f{0.0, 1.0, 0.0, 0.0};  // f(x) = x
  const auto r = bethe_residuals(f, {1.0, 3.0});
  CHECK(r[0] == Approx(1.0 / (1.0 - 3.0) - 1.0));
  CHECK(r[1] == Approx(1.0 / (3.0 - 1.0) - 3.0));
}
