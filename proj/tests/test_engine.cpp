#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "core/engine.hpp"
#include "core/rating_table.hpp"
#include "core/synth.hpp"
#include "oracles.hpp"

using reprank::EngineConfig;
using reprank::Error;
using reprank::RatingTable;
using reprank::RatingTriple;
using reprank::ReputationState;
using reprank::run_to_fixed_point;
using reprank::update_deviations;
using reprank::update_qualities;

TEST_SUITE("engine") {

TEST_CASE("quality update: hand-computed weighted means") {
  // One object, two voters.
  const std::vector<RatingTriple> triples = {{0, 0, 4.0}, {1, 0, 2.0}};
  const RatingTable table = RatingTable::build(triples, 2, 1);

  SUBCASE("alpha 0 ignores deviations entirely") {
    const std::vector<double> dev = {1.0, 4.0};
    const auto q = update_qualities(table, dev, 0.0);
    CHECK(q[0] == doctest::Approx(3.0).epsilon(1e-15));
  }

  SUBCASE("alpha 1 is inverse-deviation weighting") {
    const std::vector<double> dev = {1.0, 4.0};
    const auto q = update_qualities(table, dev, 1.0);
    // (4*1 + 2*0.25) / 1.25
    CHECK(q[0] == doctest::Approx(3.6).epsilon(1e-15));
  }

  SUBCASE("a single rating pins the quality at any alpha") {
    const std::vector<RatingTriple> one = {{0, 0, 5.0}};
    const RatingTable single = RatingTable::build(one, 2, 1);
    const std::vector<double> dev = {1.0, 7.0};
    for (double alpha : {0.0, 1.0, 2.0, 8.0}) {
      const auto q = update_qualities(single, dev, alpha);
      CHECK(q[0] == 5.0);
    }
  }
}

TEST_CASE("deviation update: hand-computed mean square errors") {
  // User 0 rated both objects, user 1 rated only the second.
  const std::vector<RatingTriple> triples = {
      {0, 0, 4.0}, {0, 1, 2.0}, {1, 1, 5.0}};
  const RatingTable table = RatingTable::build(triples, 2, 2);

  const std::vector<double> q = {3.0, 3.0};
  const auto xi = update_deviations(table, q, 1e-5);
  CHECK(xi[0] == doctest::Approx(1.0).epsilon(1e-15));  // ((4-3)^2+(2-3)^2)/2
  CHECK(xi[1] == doctest::Approx(4.0).epsilon(1e-15));  // (5-3)^2

  SUBCASE("single large miss") {
    const std::vector<RatingTriple> one = {{0, 0, 5.0}};
    const RatingTable t = RatingTable::build(one, 1, 1);
    const std::vector<double> q1 = {1.0};
    const auto x = update_deviations(t, q1, 1e-5);
    CHECK(x[0] == doctest::Approx(16.0).epsilon(1e-15));
  }

  SUBCASE("perfect agreement hits the floor") {
    const std::vector<RatingTriple> one = {{0, 0, 3.0}};
    const RatingTable t = RatingTable::build(one, 1, 1);
    const std::vector<double> q3 = {3.0};
    const auto x = update_deviations(t, q3, 1e-5);
    CHECK(x[0] == 1e-5);
  }

  SUBCASE("silent users get the neutral value") {
    const std::vector<RatingTriple> one = {{0, 0, 3.0}};
    const RatingTable t = RatingTable::build(one, 2, 1);
    const std::vector<double> q3 = {3.0};
    const auto x = update_deviations(t, q3, 1e-5);
    CHECK(x[1] == 1.0);
  }

  SUBCASE("rated object with undefined quality is an error") {
    const std::vector<double> bad = {3.0,
                                     std::numeric_limits<double>::quiet_NaN()};
    CHECK_THROWS_AS(update_deviations(table, bad, 1e-5), Error);
  }
}

TEST_CASE("alpha 0 reduces to per-object simple means in <= 2 iterations") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const RatingTable table = testutil::random_table(seed, 60, 30);
    EngineConfig cfg;
    cfg.alpha = 0.0;
    const ReputationState state = run_to_fixed_point(table, cfg);

    CHECK(state.converged);
    CHECK(state.iterations <= 2);

    const auto means = testutil::simple_means(table);
    for (std::size_t k = 0; k < means.size(); ++k) {
      if (std::isnan(means[k])) {
        CHECK(reprank::is_unrated(state.quality[k]));
      } else {
        CHECK(std::abs(state.quality[k] - means[k]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("single rating: quality equals the rating, deviation at floor") {
  const std::vector<RatingTriple> one = {{0, 0, 4.0}};
  const RatingTable table = RatingTable::build(one, 1, 1);
  EngineConfig cfg;
  cfg.alpha = 1.0;
  const ReputationState state = run_to_fixed_point(table, cfg);
  CHECK(state.converged);
  CHECK(state.quality[0] == 4.0);
  CHECK(state.deviation[0] == cfg.deviation_floor);
}

TEST_CASE("first iteration reproduces the all-ones baseline exactly") {
  const RatingTable table = testutil::random_table(77, 40, 20);
  EngineConfig cfg;
  cfg.alpha = 1.5;
  cfg.max_iterations = 1;
  const ReputationState state = run_to_fixed_point(table, cfg);

  const std::vector<double> ones(table.num_users(), 1.0);
  const auto baseline = update_qualities(table, ones, cfg.alpha);
  for (std::size_t k = 0; k < baseline.size(); ++k) {
    if (reprank::is_unrated(baseline[k])) {
      CHECK(reprank::is_unrated(state.quality[k]));
    } else {
      CHECK(state.quality[k] == baseline[k]);
    }
  }
  CHECK(state.quality_delta == 0.0);
  CHECK(state.iterations == 1);
}

TEST_CASE("boundedness holds at the fixed point") {
  for (std::uint64_t seed : {3u, 14u, 159u}) {
    const RatingTable table = testutil::random_table(seed, 80, 40);
    for (double alpha : {0.5, 1.0, 2.0}) {
      EngineConfig cfg;
      cfg.alpha = alpha;
      const ReputationState state = run_to_fixed_point(table, cfg);
      for (std::uint32_t k = 0; k < table.num_objects(); ++k) {
        if (table.object_votes(k) == 0) continue;
        CHECK(state.quality[k] >= table.bounds().lo);
        CHECK(state.quality[k] <= table.bounds().hi);
      }
      const double span = table.bounds().hi - table.bounds().lo;
      for (std::uint32_t i = 0; i < table.num_users(); ++i) {
        if (table.user_degree(i) == 0) continue;
        CHECK(state.deviation[i] >= cfg.deviation_floor);
        CHECK(state.deviation[i] <= span * span);
      }
    }
  }
}

TEST_CASE("relabeling users and objects permutes the results identically") {
  const RatingTable table = testutil::random_table(42, 30, 15);
  const std::uint32_t n = table.num_users();
  const std::uint32_t m = table.num_objects();

  std::mt19937_64 rng(99);
  std::vector<std::uint32_t> user_map(n);
  std::vector<std::uint32_t> object_map(m);
  for (std::uint32_t i = 0; i < n; ++i) user_map[i] = i;
  for (std::uint32_t k = 0; k < m; ++k) object_map[k] = k;
  std::shuffle(user_map.begin(), user_map.end(), rng);
  std::shuffle(object_map.begin(), object_map.end(), rng);

  std::vector<RatingTriple> relabeled;
  for (const RatingTriple& t : table.triples()) {
    relabeled.push_back({user_map[t.user], object_map[t.object], t.value});
  }
  const RatingTable permuted = RatingTable::build(relabeled, n, m);

  EngineConfig cfg;
  cfg.alpha = 1.0;
  const ReputationState a = run_to_fixed_point(table, cfg);
  const ReputationState b = run_to_fixed_point(permuted, cfg);

  CHECK(a.iterations == b.iterations);
  for (std::uint32_t k = 0; k < m; ++k) {
    if (reprank::is_unrated(a.quality[k])) {
      CHECK(reprank::is_unrated(b.quality[object_map[k]]));
    } else {
      CHECK(std::abs(a.quality[k] - b.quality[object_map[k]]) <= 1e-12);
    }
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    CHECK(std::abs(a.deviation[i] - b.deviation[user_map[i]]) <= 1e-12);
  }
}

TEST_CASE("scaling all deviations by a constant leaves qualities unchanged") {
  const RatingTable table = testutil::random_table(7, 40, 20);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> draw(0.1, 4.0);
  std::vector<double> dev(table.num_users());
  for (double& d : dev) d = draw(rng);

  std::vector<double> scaled = dev;
  for (double& d : scaled) d *= 3.7;

  for (double alpha : {0.5, 1.0, 2.0}) {
    const auto q1 = update_qualities(table, dev, alpha);
    const auto q2 = update_qualities(table, scaled, alpha);
    for (std::size_t k = 0; k < q1.size(); ++k) {
      if (reprank::is_unrated(q1[k])) continue;
      CHECK(q1[k] == doctest::Approx(q2[k]).epsilon(1e-12));
    }
  }
}

TEST_CASE("one extra round after convergence moves nothing past the threshold") {
  const RatingTable table = testutil::random_table(123, 90, 45);
  for (double alpha : {0.5, 1.0}) {
    EngineConfig cfg;
    cfg.alpha = alpha;
    const ReputationState state = run_to_fixed_point(table, cfg);
    REQUIRE(state.converged);

    const auto q = update_qualities(table, state.deviation, cfg.alpha);
    const auto xi = update_deviations(table, q, cfg.deviation_floor);
    for (std::size_t k = 0; k < q.size(); ++k) {
      if (reprank::is_unrated(q[k])) continue;
      CHECK(std::abs(q[k] - state.quality[k]) <= cfg.convergence_threshold);
    }
    for (std::size_t i = 0; i < xi.size(); ++i) {
      CHECK(std::abs(xi[i] - state.deviation[i]) <= cfg.convergence_threshold);
    }
  }
}

TEST_CASE("converges on a mid-size synthetic draw") {
  reprank::GeneratorConfig gen;
  gen.num_users = 500;
  gen.num_objects = 250;
  gen.density = 0.05;
  gen.seed = 11;
  const auto truth = reprank::draw_ground_truth(gen);
  const RatingTable table = reprank::generate_ratings(truth, gen);

  EngineConfig cfg;
  cfg.alpha = 1.0;
  const ReputationState state = run_to_fixed_point(table, cfg);
  CHECK(state.converged);
  CHECK(state.iterations < cfg.max_iterations);
  CHECK(state.quality_delta < cfg.convergence_threshold);
  CHECK(state.deviation_delta < cfg.convergence_threshold);
}

TEST_CASE("configuration and input validation") {
  const std::vector<RatingTriple> one = {{0, 0, 3.0}};
  const RatingTable table = RatingTable::build(one, 1, 1);

  EngineConfig cfg;
  cfg.alpha = -0.5;
  CHECK_THROWS_AS(run_to_fixed_point(table, cfg), Error);

  cfg.alpha = EngineConfig::kMaxAlpha + 1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);

  cfg = EngineConfig{};
  cfg.convergence_threshold = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);

  cfg = EngineConfig{};
  cfg.deviation_floor = -1.0;
  CHECK_THROWS_AS(cfg.validate(), Error);

  cfg = EngineConfig{};
  cfg.max_iterations = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);

  const RatingTable empty =
      RatingTable::build(std::vector<RatingTriple>{}, 2, 2);
  CHECK_THROWS_AS(run_to_fixed_point(empty, EngineConfig{}), Error);

  // Mismatched vector lengths into the phase functions.
  CHECK_THROWS_AS(update_qualities(table, std::vector<double>{1.0, 1.0}, 1.0),
                  Error);
  CHECK_THROWS_AS(
      update_deviations(table, std::vector<double>{1.0, 2.0}, 1e-5), Error);
}

}  // TEST_SUITE
