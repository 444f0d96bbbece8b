#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "robmatch/generators.hpp"
#include "robmatch/profile.hpp"

using namespace robmatch;
using testing::named;

TEST_CASE("rank counts preferred agents from zero") {
  // x: y1 y3 y2
  const Profile p = Profile::from_lists({{0, 2, 1}, {0, 1}}, {{0, 1}, {0, 1}, {0}});
  CHECK(rank(p, AgentId::u(0), AgentId::w(2)) == 1);
  CHECK(rank(p, AgentId::u(0), AgentId::w(0)) == 0);
  CHECK(rank(p, AgentId::u(1), AgentId::w(2)) == 2);
  CHECK_THROWS_AS(rank(p, AgentId::u(0), AgentId::u(1)), Error);
}

TEST_CASE("apply_swap on example 3") {
  const Profile p = gen_example3();
  const Profile q = apply_swap(p, {AgentId::u(1), 0, 1});
  CHECK(std::vector<int>(q.list_u(1).begin(), q.list_u(1).end()) == std::vector<int>{1, 0});
  CHECK(swap_distance(p, q) == SwapDistance(1));
  CHECK(apply_swap(q, {AgentId::u(1), 1, 0}) == p);

  const auto per = swap_distance_per_agent(p, q);
  CHECK(per.at(AgentId::u(1)) == SwapDistance(1));
  CHECK(per.at(AgentId::u(0)) == SwapDistance(0));
  CHECK(per.at(AgentId::w(0)) == SwapDistance(0));
  CHECK(per.at(AgentId::w(1)) == SwapDistance(0));
}

TEST_CASE("apply_swap rejects non-adjacent and unknown agents") {
  const Profile p = gen_cyclic_latin(3);
  try {
    apply_swap(p, {AgentId::u(0), 0, 2});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonAdjacentSwap);
  }
  const Profile q = gen_example3();
  try {
    apply_swap(q, {AgentId::u(0), 0, 1});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownAgent);
  }
}

TEST_CASE("swap distance") {
  CHECK(list_swap_distance(std::vector<int>{0, 1, 2}, std::vector<int>{2, 1, 0}) == SwapDistance(3));
  CHECK(list_swap_distance(std::vector<int>{0, 1}, std::vector<int>{0, 2}).is_infinite());
  CHECK(list_swap_distance(std::vector<int>{}, std::vector<int>{}) == SwapDistance(0));
  const Profile p = gen_random(4, 4, 1.0, 7);
  CHECK(swap_distance(p, p) == SwapDistance(0));
  CHECK(SwapDistance(3) < SwapDistance::infinite());
  CHECK(!SwapDistance::infinite().within(1000));
  CHECK(SwapDistance::infinite().to_string() == "inf");
  CHECK_THROWS_AS(swap_distance(p, gen_random(3, 4, 1.0, 7)), Error);
}

TEST_CASE("swap_sequence replays to the target") {
  const Profile a = gen_random(4, 4, 1.0, 3);
  Profile b = a;
  std::mt19937_64 rng(11);
  for (int k = 0; k < 6; ++k) {
    const AgentId owner{k % 2 ? Side::U : Side::W, static_cast<int>(rng() % 4)};
    const auto l = b.list(owner);
    const int pos = static_cast<int>(rng() % (l.size() - 1));
    b = apply_swap(b, {owner, l[pos], l[pos + 1]});
  }
  const auto seq = swap_sequence(a, b);
  CHECK(static_cast<std::int64_t>(seq.size()) == swap_distance(a, b).value());
  Profile c = a;
  for (const auto& s : seq) c = apply_swap(c, s);
  CHECK(c == b);
}

TEST_CASE("blocking pairs and stability on example 3") {
  const Profile p = gen_example3();
  const Matching stable = named(p, {{"a2", "b1"}});
  CHECK(blocking_pairs(p, stable).empty());
  CHECK(is_stable(p, stable));

  const Matching perfect = named(p, {{"a1", "b1"}, {"a2", "b2"}});
  const auto bps = blocking_pairs(p, perfect);
  REQUIRE(bps.size() == 1);
  CHECK(bps[0] == BlockingPair{1, 0});
  CHECK_FALSE(is_stable(p, perfect));

  const Profile single = Profile::from_lists({{0}}, {{0}});
  const Matching empty(1, 1);
  CHECK(blocking_pairs(single, empty) == std::vector<BlockingPair>{{0, 0}});
  CHECK_FALSE(is_stable(single, empty));
}

TEST_CASE("invalid matchings are rejected") {
  const Profile p = gen_example3();
  Matching bad(2, 2);
  bad.add(0, 1);  // a1-b2 is not acceptable
  try {
    blocking_pairs(p, bad);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidMatching);
  }
  Matching m(2, 2);
  m.add(0, 0);
  CHECK_THROWS_AS(m.add(1, 0), Error);
}

TEST_CASE("egalitarian cost") {
  const Profile p = gen_example2(3);
  Matching stable(6, 6);
  for (int i = 0; i < 6; ++i) stable.add(i, i);
  CHECK(egalitarian_cost(p, stable) == 8);
  CHECK(egalitarian_cost(p, testing::example2_rotated(p, 3)) == 4);
  CHECK(egalitarian_cost(gen_cyclic_latin(4), testing::diagonal(4)) == 0);
  // Unmatched agents count their list length.
  const Profile e3 = gen_example3();
  CHECK(egalitarian_cost(e3, named(e3, {{"a2", "b1"}})) == 2);
}

TEST_CASE("is_perfect") {
  const Profile e3 = gen_example3();
  CHECK_FALSE(is_perfect(e3, named(e3, {{"a2", "b1"}})));
  const Profile p = gen_example2(3);
  Matching stable(6, 6);
  for (int i = 0; i < 6; ++i) stable.add(i, i);
  CHECK(is_perfect(p, stable));
  const Profile empty = Profile::from_lists({}, {});
  CHECK(is_perfect(empty, Matching(0, 0)));
}

TEST_CASE("validate_profile reports violations") {
  RawProfile ok{{"a1", "a2"}, {"b1", "b2"}, {{0}, {0, 1}}, {{1, 0}, {1}}};
  CHECK(validate_profile(ok).profile.has_value());

  RawProfile asym{{}, {}, {{0, 1}, {0}}, {{0, 1}, {}}};
  auto r = validate_profile(asym);
  CHECK_FALSE(r.profile.has_value());
  REQUIRE(r.issues.size() == 1);
  CHECK(r.issues[0].kind == ErrorKind::AsymmetricAcceptability);
  CHECK(r.issues[0].agent == AgentId::u(0));
  CHECK(r.issues[0].other == AgentId::w(1));

  auto pruned = validate_profile(asym, AcceptabilityPolicy::Prune);
  REQUIRE(pruned.profile.has_value());
  CHECK(pruned.warnings.size() == 1);
  CHECK(pruned.profile->list_u(0).size() == 1);

  RawProfile dup{{}, {}, {{0, 0}}, {{0}}};
  auto d = validate_profile(dup);
  REQUIRE_FALSE(d.issues.empty());
  CHECK(d.issues[0].kind == ErrorKind::DuplicateEntry);

  RawProfile unknown{{}, {}, {{3}}, {{0}}};
  CHECK(validate_profile(unknown).issues.at(0).kind == ErrorKind::UnknownAgent);
}

TEST_CASE("with_list keeps the acceptable set") {
  const Profile p = gen_example3();
  CHECK_THROWS_AS(p.with_list(AgentId::u(1), {0}), Error);
  const Profile q = p.with_list(AgentId::u(1), {1, 0});
  CHECK(q.rank_u(1, 1) == 0);
  CHECK(q.content_hash() != p.content_hash());
}
