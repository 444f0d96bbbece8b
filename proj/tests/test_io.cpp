#include <doctest.h>

#include <cstdio>
#include <functional>
#include <random>

#include "robmatch/generators.hpp"
#include "robmatch/io.hpp"

using namespace robmatch;

namespace {

const char* kExample3 =
    "profile v1\n"
    "side U: a1 a2\n"
    "side W: b1 b2\n"
    "a1: b1\n"
    "a2: b1 b2\n"
    "b1: a2 a1\n"
    "b2: a2\n";

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::Internal;
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("profile round trip") {
  const Profile p = parse_profile(kExample3);
  CHECK(p == gen_example3());
  CHECK(serialize_profile(p) == kExample3);
  CHECK(serialize_profile(gen_example3()) == kExample3);
  const std::string messy =
      "# a comment\n\nprofile v1\nside W: b1 b2\nside U: a1 a2\n  b2: a2\n# x\nb1: a2   a1\na2: b1 b2\na1: b1\n";
  CHECK(serialize_profile(parse_profile(messy)) == kExample3);
}

TEST_CASE("empty lists round trip") {
  const Profile p = gen_random(3, 2, 0.0, 1);
  const std::string text = serialize_profile(p);
  CHECK(parse_profile(text) == p);
  CHECK(serialize_profile(parse_profile(text)) == text);
}

TEST_CASE("profile parse errors carry line numbers") {
  CHECK(kind_of([] { parse_profile("profile v2\n"); }) == ErrorKind::Parse);
  const std::string asym = "profile v1\nside U: a\nside W: b c\na: b c\nb: a\nc:\n";
  CHECK(kind_of([&] { parse_profile(asym); }) == ErrorKind::AsymmetricAcceptability);
  const std::string msg = message_of([&] { parse_profile(asym); });
  CHECK(msg.find("line 4") != std::string::npos);
  CHECK(msg.find("a") != std::string::npos);
  CHECK(msg.find("c") != std::string::npos);
  const Profile pruned = parse_profile(asym, AcceptabilityPolicy::Prune);
  CHECK(pruned.list_u(0).size() == 1);

  CHECK(kind_of([] { parse_profile("profile v1\nside U: a\nside W: b\na: b b\nb: a\n"); }) ==
        ErrorKind::DuplicateEntry);
  CHECK(kind_of([] { parse_profile("profile v1\nside U: a\nside W: b\na: z\nb: a\n"); }) ==
        ErrorKind::UnknownAgent);
  CHECK(message_of([] { parse_profile("profile v1\nside U: a\nside W: b\na b\n"); }).find("line 4") !=
        std::string::npos);
}

TEST_CASE("matching round trip and errors") {
  const Profile p = gen_example3();
  const Matching m = parse_matching("a2 b1\n", p);
  CHECK(m.pairs() == std::vector<std::pair<int, int>>{{1, 0}});
  CHECK(parse_matching("b1 a2\n", p) == m);
  CHECK(serialize_matching(p, m) == "a2 b1\n");
  CHECK(parse_matching(serialize_matching(p, m), p) == m);
  CHECK(parse_matching("", p).pair_count() == 0);
  CHECK_THROWS_AS(parse_matching("a9 b1\n", p), Error);
  CHECK_THROWS_AS(parse_matching("a2 b1\na2 b2\n", p), Error);
  CHECK_THROWS_AS(parse_matching("a1 b2\n", p), Error);
}

TEST_CASE("rotation rendering") {
  const Profile f = gen_example1_fixture().value();
  const auto g = RotationDigraph::build(f);
  CHECK(rotation_label(f, g.rotation(1)) == "(u1,w3) (u3,w1)");
  const std::string dot = rotations_dot(f, g);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("r0 -> r1") != std::string::npos);
  CHECK(dot.find("r0 -> r2") != std::string::npos);
  CHECK(dot.find("r1 -> r2") == std::string::npos);
}

TEST_CASE("fuzzed round trips") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 200; ++i) {
    const int nu = static_cast<int>(rng() % 6);
    const int nw = static_cast<int>(rng() % 6);
    const Profile p = gen_random(nu, nw, static_cast<double>(rng() % 11) / 10.0, rng());
    const std::string text = serialize_profile(p);
    const Profile q = parse_profile(text);
    CHECK(q == p);
    CHECK(serialize_profile(q) == text);
  }
}

TEST_CASE("files") {
  const std::string path = "robmatch_io_test.txt";
  write_file(path, kExample3);
  CHECK(read_file(path) == kExample3);
  std::remove(path.c_str());
  CHECK(kind_of([] { read_file("/nonexistent/robmatch"); }) == ErrorKind::Usage);
}
