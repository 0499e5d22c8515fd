#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "rexp/adversary.hpp"
#include "rexp/harness.hpp"

using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

TEST_CASE("crossing threshold matches its closed form") {
  REQUIRE_THAT(rexp::crossing_threshold(16, 1.0), WithinRel(2.116043053278541, 1e-14));
  REQUIRE_THAT(rexp::crossing_threshold(400, 1.0), WithinRel(678.8010117689888, 1e-14));
  // Larger c shrinks the threshold, longer horizons raise it.
  REQUIRE(rexp::crossing_threshold(400, 2.0) < rexp::crossing_threshold(400, 1.0));
  REQUIRE(rexp::crossing_threshold(800, 1.0) > rexp::crossing_threshold(400, 1.0));
}

TEST_CASE("feasibility conditions split at the documented horizons") {
  const auto d16 = rexp::condition_details(1.0, 1.0, 0.25, 16);
  REQUIRE(d16.low_case_ok);
  REQUIRE_FALSE(d16.high_case_ok);
  REQUIRE_FALSE(d16.both());
  REQUIRE_FALSE(rexp::conditions_hold(1.0, 1.0, 0.25, 399));
  REQUIRE(rexp::conditions_hold(1.0, 1.0, 0.25, 400));
  // Once feasible, doubling the horizon keeps both conditions true.
  REQUIRE(rexp::conditions_hold(1.0, 1.0, 0.25, 800));
  REQUIRE(rexp::conditions_hold(1.0, 1.0, 0.25, 1600));
}

TEST_CASE("minimal feasible horizons for reference parameter settings") {
  REQUIRE(rexp::find_min_horizon(1.0, 1.0, 0.25) == 400);
  REQUIRE(rexp::find_min_horizon(1.0, 1.0, 0.49) == 285);
  REQUIRE(rexp::find_min_horizon(2.0, 1.0, 0.25) == 3410);
  REQUIRE(rexp::find_min_horizon(1.0, 2.0, 0.25) == 515);
  REQUIRE(rexp::find_min_horizon(1.0, 1.0, 0.1) == 454777);
}

TEST_CASE("horizon scan gives up past its cap") {
  // With c this large the threshold boost sqrt(T)/(4 ln2 c) is negligible while
  // the e^{(2T)^{0.499}} term keeps growing, so no horizon is ever feasible.
  REQUIRE_THROWS_MATCHES(rexp::find_min_horizon(1e6, 1.0, 0.001), std::runtime_error,
                         Catch::Matchers::MessageMatches(
                             ContainsSubstring("no feasible horizon")));
}

TEST_CASE("adversary parameter validation") {
  REQUIRE_THROWS_AS(rexp::condition_details(1.0, 1.0, 0.6, 16), std::invalid_argument);
  REQUIRE_THROWS_AS(rexp::condition_details(1.0, 1.0, 0.5, 16), std::invalid_argument);
  REQUIRE_THROWS_AS(rexp::condition_details(0.0, 1.0, 0.25, 16), std::invalid_argument);
  REQUIRE_THROWS_AS(rexp::condition_details(1.0, -1.0, 0.25, 16), std::invalid_argument);
  REQUIRE_THROWS_AS(rexp::condition_details(1.0, 1.0, 0.25, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(rexp::find_min_horizon(1.0, 1.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(rexp::make_adversary_params(1.0, 1.0, 0.25, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(rexp::CheckmateAdversary(rexp::AdversaryParams{}), std::invalid_argument);
}

TEST_CASE("adversary plays -1 until the threshold is reached, then one punishment") {
  const auto params = rexp::make_adversary_params(1.0, 1.0, 0.25, 16);
  REQUIRE_THAT(params.threshold, WithinRel(2.116043053278541, 1e-14));
  rexp::CheckmateAdversary adv(params);
  REQUIRE(adv.phase() == rexp::AdversaryPhase::probing);
  REQUIRE_FALSE(adv.crossed());
  REQUIRE(adv.episode_case() == rexp::EpisodeCase::stayed_low);
  REQUIRE(adv.next(0.0) == -1.0);
  REQUIRE(adv.next(2.0) == -1.0);
  REQUIRE(adv.next(-50.0) == -1.0);
  REQUIRE(adv.next(params.threshold) == 32.0);  // crossing is >=, payback is 2T
  REQUIRE(adv.phase() == rexp::AdversaryPhase::punished);
  REQUIRE(adv.crossed());
  REQUIRE(adv.episode_case() == rexp::EpisodeCase::crossed);
  REQUIRE(adv.next(0.5) == 0.0);
  REQUIRE(adv.phase() == rexp::AdversaryPhase::done);
  REQUIRE(adv.next(100.0) == 0.0);
  REQUIRE(adv.next(-100.0) == 0.0);

  rexp::CheckmateAdversary fresh(params);
  REQUIRE_THROWS_AS(fresh.next(std::nan("")), std::invalid_argument);
}

TEST_CASE("lower bound value matches its closed form") {
  const auto p16 = rexp::make_adversary_params(1.0, 1.0, 0.25, 16);
  REQUIRE_THAT(rexp::lower_bound_value(p16, 3.0, 1.0), WithinRel(22.698371198626273, 1e-13));
  REQUIRE_THAT(rexp::lower_bound_value(p16, 0.0, 32.0), WithinRel(792.7620031112546, 1e-13));
  REQUIRE_THROWS_AS(rexp::lower_bound_value(p16, 1.0, 0.0), std::invalid_argument);
  REQUIRE_THROWS_AS(
      rexp::lower_bound_value(p16, std::numeric_limits<double>::infinity(), 1.0),
      std::invalid_argument);
}

TEST_CASE("constant-zero learner stays low and pays the full comparator gap") {
  const auto rep = rexp::run_adversary_episode("zero", 1.0, 1.0, 0.25);
  REQUIRE(rep.horizon == 400);
  REQUIRE(rep.episode == rexp::EpisodeCase::stayed_low);
  REQUIRE(rep.crossed_at == 0);
  REQUIRE(rep.u == 2.0 * rexp::crossing_threshold(400, 1.0));
  REQUIRE_THAT(rep.u, WithinRel(1357.6020235379776, 1e-13));
  REQUIRE(rep.l_max == 1.0);
  REQUIRE(rep.max_ratio == 1.0);
  // The zero learner's losses are all zero, so regret is exactly T * u.
  REQUIRE(rep.measured_regret == 400.0 * rep.u);
  REQUIRE_THAT(rep.measured_regret, WithinRel(543040.8094151911, 1e-13));
  REQUIRE_THAT(rep.lower_bound, WithinRel(135978.10118479776, 1e-12));
  REQUIRE(rep.measured_regret >= rep.lower_bound);
}

TEST_CASE("parameter-free learner is lured across the threshold and punished") {
  const auto rep = rexp::run_adversary_episode("rescaledexp", 1.0, 1.0, 0.25);
  REQUIRE(rep.episode == rexp::EpisodeCase::crossed);
  REQUIRE(rep.crossed_at >= 150);
  REQUIRE(rep.crossed_at <= 200);
  REQUIRE(rep.u == 0.0);
  REQUIRE(rep.l_max == 800.0);
  REQUIRE(rep.max_ratio == 800.0);
  REQUIRE_THAT(rep.lower_bound, WithinRel(270202.4850641469, 1e-12));
  REQUIRE(rep.measured_regret >= rep.lower_bound);
  // The punished run still respects its own adaptive upper bound.
  REQUIRE(rep.upper_bound >= rep.measured_regret);
}

TEST_CASE("every learner's measured regret meets the episode lower bound") {
  for (const char* name : {"rescaledexp", "zero", "adagrad", "adam", "adadelta",
                           "pistol", "scale_invariant", "sgd_decay"}) {
    const auto rep = rexp::run_adversary_episode(name, 1.0, 1.0, 0.25);
    INFO(name);
    REQUIRE(rep.horizon == 400);
    REQUIRE(std::isfinite(rep.measured_regret));
    REQUIRE(rep.measured_regret >= rep.lower_bound);
  }
}

TEST_CASE("full and re-centered variants face the same adversary guarantee") {
  const auto full = rexp::run_adversary_episode("rescaledexp", 1.0, 1.0, 0.25, false, false);
  REQUIRE(full.measured_regret >= full.lower_bound);
  const auto rec = rexp::run_adversary_episode("rescaledexp", 1.0, 1.0, 0.25, true, true);
  REQUIRE(rec.measured_regret >= rec.lower_bound);
}
