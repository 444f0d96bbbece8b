#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "robmatch/generators.hpp"
#include "robmatch/near_stability.hpp"
#include "robmatch/oracle.hpp"
#include "robmatch/stability.hpp"

using namespace robmatch;
using testing::named;

namespace {

Matching e3_perfect(const Profile& p) { return named(p, {{"a1", "b1"}, {"a2", "b2"}}); }

}  // namespace

TEST_CASE("local instability") {
  const Profile e3 = gen_example3();
  CHECK(local_instability(e3, u_optimal(e3)) == SwapDistance(0));
  CHECK(local_instability(e3, e3_perfect(e3)) == SwapDistance(1));
  CHECK(is_locally_d_nearly_stable(e3, e3_perfect(e3), 1));
  CHECK_FALSE(is_locally_d_nearly_stable(e3, e3_perfect(e3), 0));

  const Profile e2 = gen_example2(3);
  const Matching rot = testing::example2_rotated(e2, 3);
  CHECK(local_instability(e2, rot) == SwapDistance(1));
  CHECK(blocking_pairs(e2, rot) == std::vector<BlockingPair>{{0, 0}});

  // Both ends unmatched: no reordering helps.
  const Profile single = Profile::from_lists({{0}}, {{0}});
  CHECK(local_instability(single, Matching(1, 1)).is_infinite());
}

TEST_CASE("local witnesses") {
  const Profile e3 = gen_example3();
  CHECK(witness_profile_local(e3, u_optimal(e3), 0) == e3);
  const Matching m = e3_perfect(e3);
  const Profile w = witness_profile_local(e3, m, 1);
  CHECK(is_stable(w, m));
  const auto per = swap_distance_per_agent(e3, w);
  CHECK(per.max() == SwapDistance(1));
  CHECK((per.at(AgentId::u(1)) == SwapDistance(1) || per.at(AgentId::w(0)) == SwapDistance(1)));
  try {
    witness_profile_local(e3, m, 0);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotNearlyStable);
  }

  const Profile e2 = gen_example2(3);
  const Matching rot = testing::example2_rotated(e2, 3);
  const Profile w2 = witness_profile_local(e2, rot, 1);
  CHECK(w2 == apply_swap(e2, {AgentId::w(0), 0, 2}));
}

TEST_CASE("global stabilization cost") {
  const Profile e3 = gen_example3();
  const auto s = global_stabilization_cost(e3, u_optimal(e3));
  CHECK(s.cost == SwapDistance(0));
  CHECK(s.witness == std::optional<Profile>(e3));
  const auto c = global_stabilization_cost(e3, e3_perfect(e3));
  CHECK(c.cost == SwapDistance(1));
  REQUIRE(c.witness.has_value());
  CHECK(is_stable(*c.witness, e3_perfect(e3)));
  CHECK(oracle::brute_global_cost(e3, e3_perfect(e3)) == std::optional<std::int64_t>(1));

  const Profile e2 = gen_example2(3);
  const auto r = global_stabilization_cost(e2, testing::example2_rotated(e2, 3));
  CHECK(r.cost == SwapDistance(1));
  REQUIRE(r.swaps.size() == 1);
  CHECK(r.swaps[0] == SwapOp{AgentId::w(0), 0, 2});

  const Profile single = Profile::from_lists({{0}}, {{0}});
  const auto inf = global_stabilization_cost(single, Matching(1, 1));
  CHECK(inf.cost.is_infinite());
  CHECK_FALSE(inf.witness.has_value());
}

TEST_CASE("global cost properties on random instances") {
  std::mt19937_64 rng(17);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Profile p = gen_random(3, 3, seed % 2 ? 1.0 : 0.7, seed);
    for (const auto& m : oracle::enumerate_matchings(p)) {
      if (rng() % 3) continue;
      const auto g = global_stabilization_cost(p, m);
      const auto l = local_instability(p, m);
      if (g.cost.is_finite()) {
        REQUIRE(g.witness.has_value());
        CHECK(is_stable(*g.witness, m));
        CHECK(swap_distance(p, *g.witness) == g.cost);
        CHECK(static_cast<std::int64_t>(g.swaps.size()) == g.cost.value());
        CHECK(l <= g.cost);
        const auto b = oracle::brute_global_cost(p, m, 3);
        if (g.cost.value() <= 3) CHECK(b == std::optional<std::int64_t>(g.cost.value()));
      } else {
        CHECK(oracle::brute_global_cost(p, m, 3) == std::nullopt);
      }
    }
  }
}

TEST_CASE("near-stable solvers on the examples") {
  const Profile e3 = gen_example3();
  const auto g = solve_global_near(e3, 1, Objective::Perfect);
  REQUIRE(g.has_value());
  CHECK(g->matching == e3_perfect(e3));
  CHECK(is_stable(g->witness, g->matching));
  CHECK_FALSE(solve_global_near(e3, 0, Objective::Perfect).has_value());
  CHECK(solve_local_near(e3, 1, Objective::Perfect) == std::optional<Matching>(e3_perfect(e3)));
  CHECK_FALSE(solve_local_near(e3, 0, Objective::Perfect).has_value());

  const Profile e2 = gen_example2(3);
  const auto eg = solve_global_near(e2, 1, Objective::Egalitarian, 4);
  REQUIRE(eg.has_value());
  CHECK(eg->matching == testing::example2_rotated(e2, 3));
  CHECK(eg->cost == 4);
  CHECK_FALSE(solve_global_near(e2, 0, Objective::Egalitarian, 7).has_value());
  CHECK_THROWS_AS(solve_global_near(e2, 1, Objective::Egalitarian), Error);
  const auto mc = min_cost_global_near(e2, 1);
  REQUIRE(mc.has_value());
  CHECK(mc->cost == 4);
  const auto ml = min_cost_local_near(e2, 1);
  REQUIRE(ml.has_value());
  CHECK(egalitarian_cost(e2, *ml) <= 4);

  // A budget at least the longest list makes every matching locally fine
  // when no blocking pair has an unmatched end.
  const Profile c = gen_cyclic_latin(3);
  CHECK(solve_local_near(c, 3, Objective::Perfect).has_value());
}

TEST_CASE("budget zero is classic stability") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Profile p = gen_random(3, 3, 0.8, seed + 50);
    const auto stable = oracle::enumerate_stable_bf(p);
    const auto g = solve_global_near(p, 0, Objective::Any);
    REQUIRE(g.has_value());
    CHECK(is_stable(p, g->matching));
    const auto l = solve_local_near(p, 0, Objective::Any);
    REQUIRE(l.has_value());
    CHECK(is_stable(p, *l));
    bool perfect = false;
    for (const auto& m : stable) perfect = perfect || is_perfect(p, m);
    CHECK(solve_global_near(p, 0, Objective::Perfect).has_value() == perfect);
    CHECK(solve_local_near(p, 0, Objective::Perfect).has_value() == perfect);
  }
}

TEST_CASE("penalty-box repair") {
  const Profile e3 = gen_example3();
  const Matching m1 = u_optimal(e3);
  const SwapOp s{AgentId::u(1), 0, 1};
  const Matching m2 = repair_after_swap(e3, m1, s);
  CHECK(m2 == e3_perfect(e3));
  CHECK(is_stable(apply_swap(e3, s), m2));

  // A swap irrelevant to m1 changes nothing.
  const Profile e2 = gen_example2(3);
  const Matching st = u_optimal(e2);
  const SwapOp far{AgentId::u(3), 1, 2};  // x1: y1 b1 b2
  CHECK(repair_after_swap(e2, st, far) == st);
  CHECK_THROWS_AS(repair_after_swap(e3, e3_perfect(e3), s), Error);
}

TEST_CASE("tradeoff curves") {
  const auto e2 = tradeoff_curve(gen_example2(3), NearMode::Global, 1, Objective::Egalitarian);
  REQUIRE(e2.size() == 2);
  CHECK(e2[0].d == 0);
  CHECK(e2[0].value == std::optional<std::int64_t>(8));
  CHECK(e2[1].value == std::optional<std::int64_t>(4));

  const auto e3 = tradeoff_curve(gen_example3(), NearMode::Global, 1, Objective::Perfect);
  REQUIRE(e3.size() == 2);
  CHECK(e3[0].value == std::optional<std::int64_t>(0));
  CHECK(e3[1].value == std::optional<std::int64_t>(1));

  const auto flat = tradeoff_curve(gen_cyclic_latin(3), NearMode::Local, 2, Objective::Perfect);
  for (const auto& pt : flat) CHECK(pt.value == std::optional<std::int64_t>(1));
}

TEST_CASE("perfect matchings are ruled out by counting") {
  const Profile e3 = gen_example3();
  // One unmatched agent per side needs ceil(2/2) = 1 swap at least.
  CHECK_FALSE(solve_global_near(e3, 0, Objective::Perfect).has_value());
  const Profile uneven = gen_random(3, 4, 1.0, 3);
  CHECK_FALSE(solve_global_near(uneven, 3, Objective::Perfect).has_value());
  CHECK_FALSE(solve_local_near(uneven, 3, Objective::Perfect).has_value());
}
