#include <doctest.h>

#include "robmatch/generators.hpp"
#include "robmatch/oracle.hpp"
#include "robmatch/rotations.hpp"
#include "robmatch/stability.hpp"

using namespace robmatch;

namespace {

std::vector<std::string> named_list(const Profile& p, const std::string& who) {
  const AgentId x = p.find(who).value();
  std::vector<std::string> out;
  for (int y : p.list(x)) out.push_back(p.name({opposite(x.side), y}));
  return out;
}

RawProfile raw(const Profile& p) {
  RawProfile r{p.names(Side::U), p.names(Side::W), {}, {}};
  for (int u = 0; u < p.size_u(); ++u) r.listsU.emplace_back(p.list_u(u).begin(), p.list_u(u).end());
  for (int w = 0; w < p.size_w(); ++w) r.listsW.emplace_back(p.list_w(w).begin(), p.list_w(w).end());
  return r;
}

}  // namespace

TEST_CASE("example 2 lists") {
  const Profile p = gen_example2(3);
  CHECK(named_list(p, "b1") == std::vector<std::string>{"a0", "x1", "x2", "x3", "a1"});
  CHECK(named_list(p, "a0") == std::vector<std::string>{"b0", "b1"});
  CHECK(named_list(p, "a2") == std::vector<std::string>{"b2", "b0"});
  CHECK(named_list(p, "b0") == std::vector<std::string>{"a0", "a2"});
  CHECK(named_list(p, "x2") == std::vector<std::string>{"y2", "b1", "b2"});
  CHECK(named_list(p, "y3") == std::vector<std::string>{"x3"});
  CHECK_THROWS_AS(gen_example2(1), Error);
  for (int n = 2; n <= 4; ++n) CHECK(oracle::enumerate_stable_bf(gen_example2(n), 2 * n).size() == 1);
}

TEST_CASE("example 3 lists") {
  const Profile p = gen_example3();
  CHECK(named_list(p, "a1") == std::vector<std::string>{"b1"});
  CHECK(named_list(p, "a2") == std::vector<std::string>{"b1", "b2"});
  CHECK(named_list(p, "b1") == std::vector<std::string>{"a2", "a1"});
  CHECK(named_list(p, "b2") == std::vector<std::string>{"a2"});
  CHECK(matched_partition(p).n_unmatched == 2);
}

TEST_CASE("cyclic profile") {
  const Profile p = gen_cyclic_latin(4);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      CHECK(p.list_u(i)[k] == (i + k) % 4);
      CHECK(p.list_w(i)[k] == (i + k) % 4);
    }
  // Position-wise distinct: each rank position holds a different agent per side.
  for (int k = 0; k < 4; ++k) {
    std::vector<int> seen;
    for (int i = 0; i < 4; ++i) seen.push_back(p.list_u(i)[k]);
    std::sort(seen.begin(), seen.end());
    CHECK(std::unique(seen.begin(), seen.end()) == seen.end());
  }
}

TEST_CASE("random profiles") {
  const Profile full = gen_random(4, 5, 1.0, 1);
  for (int u = 0; u < 4; ++u) CHECK(full.list_u(u).size() == 5);
  const Profile empty = gen_random(3, 3, 0.0, 1);
  for (int u = 0; u < 3; ++u) CHECK(empty.list_u(u).empty());
  CHECK(gen_random(5, 5, 0.5, 42) == gen_random(5, 5, 0.5, 42));
  CHECK_FALSE(gen_random(5, 5, 0.5, 42) == gen_random(5, 5, 0.5, 43));
  CHECK_THROWS_AS(gen_random(2, 2, 1.5, 1), Error);
  for (std::uint64_t s = 0; s < 30; ++s) {
    const Profile p = gen_random(4, 3, 0.6, s);
    CHECK(validate_profile(raw(p)).issues.empty());
  }
  CHECK(validate_profile(raw(gen_example2(4))).issues.empty());
}

TEST_CASE("example 1 fixture") {
  const auto f = gen_example1_fixture();
  REQUIRE(f.has_value());
  CHECK(named_list(*f, "u3") == std::vector<std::string>{"w4", "w1", "w3", "w2"});
  CHECK(named_list(*f, "w2") == std::vector<std::string>{"u2", "u3", "u4", "u1"});
  CHECK(oracle::enumerate_stable_bf(*f).size() == 5);
  CHECK(RotationDigraph::build(*f).size() == 3);
}
