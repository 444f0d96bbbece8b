#include "robmatch/generators.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "robmatch/robustness.hpp"
#include "robmatch/rotations.hpp"

namespace robmatch {

Profile gen_example2(int n) {
  if (n < 2) throw Error(ErrorKind::InvalidInput, "example 2 needs n >= 2");
  const auto a = [](int i) { return i; };
  const auto x = [n](int i) { return n + i - 1; };  // 1-based
  const auto b = [](int i) { return i; };
  const auto y = [n](int i) { return n + i - 1; };
  std::vector<std::vector<int>> lu(2 * n), lw(2 * n);
  std::vector<std::string> nu, nw;
  for (int i = 0; i < n; ++i) {
    nu.push_back("a" + std::to_string(i));
    nw.push_back("b" + std::to_string(i));
    lu[a(i)] = {b(i), b((i + 1) % n)};
  }
  for (int i = 1; i <= n; ++i) {
    nu.push_back("x" + std::to_string(i));
    nw.push_back("y" + std::to_string(i));
    lu[x(i)].push_back(y(i));
    for (int j = 1; j < n; ++j) lu[x(i)].push_back(b(j));
    lw[y(i)] = {x(i)};
  }
  lw[b(0)] = {a(0), a(n - 1)};
  for (int i = 1; i < n; ++i) {
    lw[b(i)].push_back(a(i - 1));
    for (int j = 1; j <= n; ++j) lw[b(i)].push_back(x(j));
    lw[b(i)].push_back(a(i));
  }
  return Profile::from_lists(std::move(lu), std::move(lw), std::move(nu), std::move(nw));
}

Profile gen_example3() {
  return Profile::from_lists({{0}, {0, 1}}, {{1, 0}, {1}}, {"a1", "a2"}, {"b1", "b2"});
}

Profile gen_cyclic_latin(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "cyclic profile needs n >= 1");
  std::vector<std::vector<int>> lu(n), lw(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      lu[i].push_back((i + k) % n);
      lw[i].push_back((i + k) % n);
    }
  return Profile::from_lists(std::move(lu), std::move(lw));
}

Profile gen_random(int nU, int nW, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) throw Error(ErrorKind::InvalidInput, "density must lie in [0, 1]");
  if (nU < 0 || nW < 0) throw Error(ErrorKind::InvalidInput, "side sizes must be nonnegative");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(density);
  std::vector<std::vector<int>> lu(nU), lw(nW);
  for (int u = 0; u < nU; ++u)
    for (int w = 0; w < nW; ++w)
      if (coin(rng)) {
        lu[u].push_back(w);
        lw[w].push_back(u);
      }
  for (auto& l : lu) std::shuffle(l.begin(), l.end(), rng);
  for (auto& l : lw) std::shuffle(l.begin(), l.end(), rng);
  return Profile::from_lists(std::move(lu), std::move(lw));
}

namespace {

// Insert `extra` at position `pos` of a three-element chain.
std::vector<int> with_insert(std::array<int, 3> chain, int extra, int pos) {
  std::vector<int> l(chain.begin(), chain.end());
  l.insert(l.begin() + pos, extra);
  return l;
}

Matching from_pairs(std::vector<std::pair<int, int>> pairs) { return Matching(4, 4, pairs); }

bool fixture_facts_hold(const Profile& p) {
  const auto g = RotationDigraph::build(p);
  const std::vector<Rotation> want{{{{0, 1}, {1, 2}, {2, 3}, {3, 0}}}, {{{0, 2}, {2, 0}}}, {{{1, 3}, {3, 1}}}};
  if (g.rotations() != want) return false;
  if (g.arcs() != std::vector<std::pair<int, int>>{{0, 1}, {0, 2}}) return false;

  const Matching m2 = from_pairs({{0, 0}, {1, 1}, {2, 2}, {3, 3}});
  const auto trace = find_d_robust_traced(p, 1);
  if (!trace.matching || *trace.matching != m2) return false;
  if (trace.A != std::vector<int>{0} || trace.T != std::vector<int>{0, 1, 2}) return false;
  int robustCount = 0;
  g.for_each_closed_subset([&](const std::vector<int>& s) {
    if (is_d_robust(p, g.matching_of(s), 1).robust) ++robustCount;
  });
  return robustCount == 1;
}

}  // namespace

std::optional<Profile> gen_example1_fixture() {
  // Partner chains along M1 -> M3 -> M2 fix three entries of each list;
  // the fourth entry's position is searched. u3 and w2 are fully given.
  const std::vector<int> u3{3, 0, 2, 1};
  const std::vector<int> w2{1, 2, 3, 0};
  for (int c = 0; c < 4 * 4 * 4 * 4 * 4 * 4; ++c) {
    int code = c;
    auto next = [&code]() {
      const int v = code % 4;
      code /= 4;
      return v;
    };
    std::vector<std::vector<int>> lu(4), lw(4);
    lu[0] = with_insert({1, 2, 0}, 3, next());
    lu[1] = with_insert({2, 3, 1}, 0, next());
    lu[2] = u3;
    lu[3] = with_insert({0, 1, 3}, 2, next());
    lw[0] = with_insert({0, 2, 3}, 1, next());
    lw[1] = w2;
    lw[2] = with_insert({2, 0, 1}, 3, next());
    lw[3] = with_insert({3, 1, 2}, 0, next());
    Profile p = Profile::from_lists(lu, lw, {"u1", "u2", "u3", "u4"}, {"w1", "w2", "w3", "w4"});
    if (fixture_facts_hold(p)) return p;
  }
  return std::nullopt;
}

}  // namespace robmatch
