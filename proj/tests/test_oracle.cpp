#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "robmatch/generators.hpp"
#include "robmatch/oracle.hpp"
#include "robmatch/stability.hpp"

using namespace robmatch;
using namespace robmatch::oracle;

TEST_CASE("matching enumeration counts") {
  const Profile full = Profile::from_lists({{0, 1}, {1, 0}}, {{0, 1}, {1, 0}});
  CHECK(enumerate_matchings(full).size() == 7);
  CHECK(enumerate_matchings(gen_example3()).size() == 5);
  CHECK(enumerate_matchings(Profile::from_lists({}, {})).size() == 1);
  const auto all = enumerate_matchings(gen_random(4, 4, 0.6, 2));
  CHECK(std::set<Matching>(all.begin(), all.end()).size() == all.size());
  try {
    enumerate_matchings(gen_cyclic_latin(7));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooLarge);
  }
}

TEST_CASE("stable enumeration") {
  const Profile e3 = gen_example3();
  CHECK(enumerate_stable_bf(e3) == std::vector<Matching>{testing::named(e3, {{"a2", "b1"}})});
  CHECK(enumerate_stable_bf(gen_example2(2)).size() == 1);
  CHECK(enumerate_stable_bf(gen_example1_fixture().value()).size() == 5);
}

TEST_CASE("profile balls") {
  const Profile e3 = gen_example3();
  CHECK(profiles_within(e3, 0, NearMode::Global) == std::vector<Profile>{e3});
  // Two-entry lists: a2 and b1 only.
  CHECK(profiles_within(e3, 1, NearMode::Global).size() == 3);
  CHECK(profiles_within(e3, 1, NearMode::Local).size() == 4);
  const Profile p = gen_random(3, 3, 1.0, 4);
  std::size_t prev = 0;
  for (int d = 0; d <= 3; ++d) {
    const auto ball = profiles_within(p, d, NearMode::Global);
    CHECK(ball.size() > prev);
    prev = ball.size();
    for (const auto& q : ball) CHECK(swap_distance(p, q).within(d));
  }
  // 6 lists of length 3: 1 + 6*2 + (C(6,2)*4 + 6*2) profiles within 2.
  CHECK(profiles_within(p, 2, NearMode::Global).size() == 1 + 12 + 60 + 12);
  CHECK_THROWS_AS(profiles_within(p, 3, NearMode::Global, 10), Error);
}

TEST_CASE("brute-force checks on the examples") {
  const Profile e2 = gen_example2(3);
  CHECK_FALSE(brute_is_d_robust(e2, u_optimal(e2), 1));
  CHECK(brute_is_d_robust(e2, u_optimal(e2), 0));
  const Profile e3 = gen_example3();
  const Matching perfect = testing::named(e3, {{"a1", "b1"}, {"a2", "b2"}});
  CHECK(brute_global_cost(e3, perfect) == std::optional<std::int64_t>(1));
  CHECK(brute_nearly_stable(e3, perfect, 1, NearMode::Local));
  CHECK_FALSE(brute_nearly_stable(e3, perfect, 0, NearMode::Global));
  const auto found = brute_solve_near(e3, 1, NearMode::Global, Objective::Perfect);
  REQUIRE(found.has_value());
  CHECK(found->matching == perfect);
  CHECK(is_stable(found->witness, perfect));
  CHECK(brute_min_cost_near(e2, 1, NearMode::Global) == std::optional<std::int64_t>(4));
  CHECK(brute_min_cost_near(e2, 0, NearMode::Global) == std::optional<std::int64_t>(8));
}
