#include "robmatch/stability.hpp"

#include <algorithm>
#include <deque>

namespace robmatch {

namespace {

// proposer lists are lists(proposerSide); accept(r, a, b) is true when
// receiver r prefers a over b.
template <class ListOf, class RankOf>
std::vector<int> deferred_acceptance(int nProp, int nRecv, ListOf listOf, RankOf rankOf) {
  std::vector<int> next(nProp, 0);
  std::vector<int> holds(nRecv, Matching::kNone);
  std::vector<int> engaged(nProp, Matching::kNone);
  std::deque<int> free;
  for (int i = 0; i < nProp; ++i) free.push_back(i);
  while (!free.empty()) {
    const int a = free.front();
    free.pop_front();
    auto l = listOf(a);
    if (next[a] >= static_cast<int>(l.size())) continue;
    const int r = l[next[a]++];
    const int cur = holds[r];
    if (cur == Matching::kNone) {
      holds[r] = a;
      engaged[a] = r;
    } else if (rankOf(r, a) < rankOf(r, cur)) {
      holds[r] = a;
      engaged[a] = r;
      engaged[cur] = Matching::kNone;
      free.push_front(cur);
    } else {
      free.push_front(a);
    }
  }
  return engaged;
}

}  // namespace

Matching u_optimal(const Profile& p) {
  auto engaged = deferred_acceptance(
      p.size_u(), p.size_w(), [&](int u) { return p.list_u(u); },
      [&](int w, int u) { return p.rank_w(w, u); });
  Matching m(p.size_u(), p.size_w());
  for (int u = 0; u < p.size_u(); ++u)
    if (engaged[u] != Matching::kNone) m.add(u, engaged[u]);
  return m;
}

Matching w_optimal(const Profile& p) {
  auto engaged = deferred_acceptance(
      p.size_w(), p.size_u(), [&](int w) { return p.list_w(w); },
      [&](int u, int w) { return p.rank_u(u, w); });
  Matching m(p.size_u(), p.size_w());
  for (int w = 0; w < p.size_w(); ++w)
    if (engaged[w] != Matching::kNone) m.add(engaged[w], w);
  return m;
}

bool PartitionResult::is_matched(AgentId x) const {
  return std::find(matched.begin(), matched.end(), x) != matched.end();
}

PartitionResult matched_partition(const Profile& p) {
  const Matching m = u_optimal(p);
  PartitionResult out;
  for (int u = 0; u < p.size_u(); ++u)
    (m.partner_of_u(u) != Matching::kNone ? out.matched : out.unmatched).push_back(AgentId::u(u));
  for (int w = 0; w < p.size_w(); ++w)
    (m.partner_of_w(w) != Matching::kNone ? out.matched : out.unmatched).push_back(AgentId::w(w));
  out.n_matched = static_cast<int>(out.matched.size());
  out.n_unmatched = static_cast<int>(out.unmatched.size());
  return out;
}

}  // namespace robmatch
