#include <doctest.h>

#include <vector>

#include "core/rating_table.hpp"

using reprank::Error;
using reprank::ErrorCode;
using reprank::RatingTable;
using reprank::RatingTriple;

namespace {

RatingTable small_table() {
  // 3 users x 4 objects; object 3 unrated, user 2 silent is impossible here
  // so user 2 gets exactly one rating.
  const std::vector<RatingTriple> triples = {
      {0, 1, 4.0}, {0, 0, 5.0}, {1, 0, 3.0}, {1, 2, 2.0}, {2, 2, 1.0},
  };
  return RatingTable::build(triples, 3, 4);
}

}  // namespace

TEST_SUITE("rating_table") {

TEST_CASE("adjacency views are sorted and mutually consistent") {
  const RatingTable table = small_table();

  CHECK(table.num_users() == 3);
  CHECK(table.num_objects() == 4);
  CHECK(table.num_ratings() == 5);
  CHECK(table.duplicates_dropped() == 0);

  const auto user0 = table.ratings_by_user(0);
  REQUIRE(user0.size() == 2);
  CHECK(user0[0].id == 0);  // ascending object id despite insertion order
  CHECK(user0[0].value == 5.0);
  CHECK(user0[1].id == 1);
  CHECK(user0[1].value == 4.0);

  const auto object0 = table.ratings_of_object(0);
  REQUIRE(object0.size() == 2);
  CHECK(object0[0].id == 0);
  CHECK(object0[1].id == 1);
  CHECK(object0[0].value == 5.0);
  CHECK(object0[1].value == 3.0);

  CHECK(table.user_degree(2) == 1);
  CHECK(table.object_votes(2) == 2);
  CHECK(table.object_votes(3) == 0);
  CHECK(table.unrated_object_count() == 1);
  CHECK(table.silent_user_count() == 0);

  // Every rating reachable through users must be reachable through objects.
  std::size_t via_objects = 0;
  for (std::uint32_t k = 0; k < table.num_objects(); ++k) {
    via_objects += table.ratings_of_object(k).size();
  }
  CHECK(via_objects == table.num_ratings());
}

TEST_CASE("canonical triple order is (user, object) ascending") {
  const RatingTable table = small_table();
  const auto& triples = table.triples();
  REQUIRE(triples.size() == 5);
  for (std::size_t i = 1; i < triples.size(); ++i) {
    const bool ordered =
        triples[i - 1].user < triples[i].user ||
        (triples[i - 1].user == triples[i].user &&
         triples[i - 1].object < triples[i].object);
    CHECK(ordered);
  }
}

TEST_CASE("duplicate pairs keep the last value and count the drops") {
  const std::vector<RatingTriple> triples = {
      {0, 0, 1.0}, {0, 0, 2.0}, {1, 0, 3.0}, {0, 0, 4.5},
  };
  const RatingTable table = RatingTable::build(triples, 2, 1);
  CHECK(table.num_ratings() == 2);
  CHECK(table.duplicates_dropped() == 2);
  const auto votes = table.ratings_of_object(0);
  REQUIRE(votes.size() == 2);
  CHECK(votes[0].id == 0);
  CHECK(votes[0].value == 4.5);
  CHECK(votes[1].value == 3.0);
}

TEST_CASE("out-of-range indices are rejected with the offender named") {
  const std::vector<RatingTriple> bad_user = {{5, 0, 3.0}};
  CHECK_THROWS_AS(RatingTable::build(bad_user, 2, 2), Error);
  try {
    RatingTable::build(bad_user, 2, 2);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
    CHECK(std::string(e.what()).find("user") != std::string::npos);
  }

  const std::vector<RatingTriple> bad_object = {{0, 9, 3.0}};
  CHECK_THROWS_AS(RatingTable::build(bad_object, 2, 2), Error);
}

TEST_CASE("ratings outside the bounds are rejected") {
  const std::vector<RatingTriple> too_high = {{0, 0, 5.5}};
  try {
    RatingTable::build(too_high, 1, 1);
    FAIL("expected a rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
  }

  // Custom bounds admit the same value.
  const RatingTable table = RatingTable::build(too_high, 1, 1, {0.0, 10.0});
  CHECK(table.num_ratings() == 1);
}

TEST_CASE("density at the full-scale movie-log shape") {
  // 6040 x 3900 grid with 1001130 distinct pairs: density lands exactly on
  // the canonical 0.0425 because 1001130 = 23556000 * 425/10000.
  const std::uint32_t num_users = 6040;
  const std::uint32_t num_objects = 3900;
  const std::size_t count = 1001130;
  std::vector<RatingTriple> triples;
  triples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    triples.push_back({static_cast<std::uint32_t>(i % num_users),
                       static_cast<std::uint32_t>(i / num_users), 3.0});
  }
  const RatingTable table = RatingTable::build(triples, num_users, num_objects);
  CHECK(table.num_ratings() == count);
  CHECK(reprank::density(table) == 0.0425);
}

TEST_CASE("density basics and the empty-grid error") {
  const std::vector<RatingTriple> full = {
      {0, 0, 1.0}, {0, 1, 2.0}, {1, 0, 3.0}, {1, 1, 4.0}};
  CHECK(reprank::density(RatingTable::build(full, 2, 2)) == 1.0);

  const std::vector<RatingTriple> one = {{0, 0, 1.0}};
  CHECK(reprank::density(RatingTable::build(one, 2, 2)) == 0.25);

  const std::vector<RatingTriple> none;
  CHECK(reprank::density(RatingTable::build(none, 2, 2)) == 0.0);
  CHECK_THROWS_AS(reprank::density(RatingTable{}), Error);
}

}  // TEST_SUITE
