#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rexp/ftrl.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using rexp::Vec;

TEST_CASE("psi is zero at the origin and grows like |w| log|w|") {
  REQUIRE(rexp::psi(0.0) == 0.0);
  REQUIRE_THAT(rexp::psi(1.0), WithinRel(0.3862943611198906, 1e-13));
  REQUIRE_THAT(rexp::psi(-1.0), WithinRel(0.3862943611198906, 1e-13));  // even in w
  REQUIRE_THAT(rexp::psi(std::exp(1.0) - 1.0), WithinRel(1.0, 1e-13));
  REQUIRE(rexp::psi(2.0) > rexp::psi(1.0));  // increasing in |w|
}

TEST_CASE("psi of a vector depends only on its norm") {
  REQUIRE_THAT(rexp::psi(Vec{3.0, 4.0}), WithinRel(rexp::psi(5.0), 1e-15));
  REQUIRE(rexp::psi(Vec{0.0, 0.0}) == 0.0);
}

TEST_CASE("psi rejects non-finite input") {
  REQUIRE_THROWS_AS(rexp::psi(std::numeric_limits<double>::infinity()), std::invalid_argument);
  REQUIRE_THROWS_AS(rexp::psi(std::nan("")), std::invalid_argument);
}

TEST_CASE("scalar argmin has magnitude exp(eta |g|) - 1 opposite the gradient sum") {
  REQUIRE_THAT(rexp::ftrl_argmin(1.0, 0.5), WithinRel(-0.6487212707001282, 1e-13));
  REQUIRE_THAT(rexp::ftrl_argmin(-1.0, 0.5), WithinRel(0.6487212707001282, 1e-13));
  REQUIRE(rexp::ftrl_argmin(0.0, 0.5) == 0.0);
}

TEST_CASE("vector argmin points along -g_sum with the scalar magnitude") {
  const Vec w = rexp::ftrl_argmin(Vec{3.0, 4.0}, 0.1);
  REQUIRE_THAT(w[0], WithinRel(-0.3892327624200769, 1e-13));
  REQUIRE_THAT(w[1], WithinRel(-0.5189770165601025, 1e-13));
  const Vec z = rexp::ftrl_argmin(Vec{0.0, 0.0}, 0.1);
  REQUIRE(z == Vec{0.0, 0.0});
}

TEST_CASE("argmin magnitude is increasing in eta and in |g_sum|") {
  const double base = std::abs(rexp::ftrl_argmin(2.0, 0.3));
  REQUIRE(std::abs(rexp::ftrl_argmin(2.0, 0.4)) > base);
  REQUIRE(std::abs(rexp::ftrl_argmin(3.0, 0.3)) > base);
}

TEST_CASE("argmin solves the one-step objective better than nearby points") {
  // F(w) = g_sum * w + psi(w)/eta must be minimal at the closed form.
  const double g = 1.7, eta = 0.8;
  const double w = rexp::ftrl_argmin(g, eta);
  auto objective = [&](double x) { return g * x + rexp::psi(x) / eta; };
  for (double d : {1e-4, 1e-2, 0.5, 2.0}) {
    REQUIRE(objective(w) <= objective(w + d));
    REQUIRE(objective(w) <= objective(w - d));
  }
}

TEST_CASE("argmin validates eta and finiteness") {
  REQUIRE_THROWS_AS(rexp::ftrl_argmin(1.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(rexp::ftrl_argmin(1.0, -1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(rexp::ftrl_argmin(std::nan(""), 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(rexp::ftrl_argmin(Vec{1.0, std::nan("")}, 1.0), std::invalid_argument);
}

TEST_CASE("argmin exponent past the overflow guard throws instead of returning inf") {
  REQUIRE_THROWS_AS(rexp::ftrl_argmin(1.0, 701.0), std::overflow_error);
  REQUIRE_THROWS_AS(rexp::ftrl_argmin(Vec{800.0}, 1.0), std::overflow_error);
  REQUIRE(std::isfinite(rexp::ftrl_argmin(1.0, 700.0)));  // boundary itself is allowed
}
