#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rexp/hinge.hpp"
#include "rexp/rng.hpp"

using Catch::Matchers::ContainsSubstring;
using rexp::SparseExample;
using rexp::Vec;

TEST_CASE("loss at the zero model is exactly 1") {
  const SparseExample ex{{{1, 2.5}, {3, -4.0}}, +1};
  const Vec w(3, 0.0);
  REQUIRE(rexp::hinge_loss(w, ex) == 1.0);
}

TEST_CASE("violated margin gives loss 1 - y<w,x> and gradient -y x") {
  const SparseExample ex{{{1, 2.0}, {3, -1.0}}, +1};
  const Vec w{0.25, 9.0, 0.5};            // <w,x> = 0.5 - 0.5 = 0
  REQUIRE(rexp::sparse_dot(w, ex) == 0.0);
  REQUIRE(rexp::hinge_loss(w, ex) == 1.0);
  Vec g;
  rexp::hinge_subgradient(w, ex, g);
  REQUIRE(g == Vec{-2.0, 0.0, 1.0});      // untouched coordinates stay zero
}

TEST_CASE("negative labels flip the gradient sign") {
  const SparseExample ex{{{2, 3.0}}, -1};
  const Vec w{0.0, 0.25};                 // y<w,x> = -0.75 < 1: violated
  REQUIRE(rexp::hinge_loss(w, ex) == 1.75);
  Vec g(2, 99.0);
  rexp::hinge_subgradient(w, ex, g);
  REQUIRE(g == Vec{0.0, 3.0});
}

TEST_CASE("satisfied margin gives zero loss and zero gradient") {
  const SparseExample ex{{{1, 1.0}}, +1};
  const Vec w{2.0};
  REQUIRE(rexp::hinge_loss(w, ex) == 0.0);
  Vec g{5.0};
  rexp::hinge_subgradient(w, ex, g);
  REQUIRE(g == Vec{0.0});
}

TEST_CASE("the kink at margin exactly 1 takes the zero subgradient") {
  const SparseExample ex{{{1, 0.5}}, +1};
  const Vec w{2.0};                        // y<w,x> = 1 exactly
  REQUIRE(rexp::hinge_loss(w, ex) == 0.0);
  Vec g;
  rexp::hinge_subgradient(w, ex, g);
  REQUIRE(g == Vec{0.0});
}

TEST_CASE("subgradient resizes or zero-fills the output buffer") {
  const SparseExample ex{{{1, 1.0}}, +1};
  const Vec w{0.0, 0.0};
  Vec g{7.0};                              // wrong size: must be reallocated
  rexp::hinge_subgradient(w, ex, g);
  REQUIRE(g == Vec{-1.0, 0.0});
}

TEST_CASE("out-of-dimension feature indices raise with index and dimension") {
  const Vec w(3, 0.0);
  REQUIRE_THROWS_MATCHES(
      rexp::sparse_dot(w, SparseExample{{{4, 1.0}}, +1}), std::out_of_range,
      Catch::Matchers::MessageMatches(ContainsSubstring("index 4") &&
                                      ContainsSubstring("dimension 3")));
  REQUIRE_THROWS_AS(rexp::sparse_dot(w, SparseExample{{{0, 1.0}}, +1}), std::out_of_range);
  REQUIRE_THROWS_AS(rexp::hinge_loss(w, SparseExample{{{-2, 1.0}}, +1}), std::out_of_range);
}

TEST_CASE("subgradient inequality l(u) >= l(w) + <g, u - w> on random triples") {
  rexp::SplitMix gen(4200);
  Vec w(4), u(4), g;
  for (int trial = 0; trial < 100; ++trial) {
    SparseExample ex;
    ex.label = gen.coin(0.5) ? 1 : -1;
    for (int idx = 1; idx <= 4; ++idx)
      if (gen.coin(0.7)) ex.features.emplace_back(idx, 4.0 * gen.uniform_pm());
    for (auto& x : w) x = 3.0 * gen.uniform_pm();
    for (auto& x : u) x = 3.0 * gen.uniform_pm();
    rexp::hinge_subgradient(w, ex, g);
    double lin = rexp::hinge_loss(w, ex);
    for (std::size_t i = 0; i < 4; ++i) lin += g[i] * (u[i] - w[i]);
    REQUIRE(rexp::hinge_loss(u, ex) >= lin - 1e-12);
  }
}
