#include "robmatch/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace robmatch::oracle {

namespace {

void check_cap(const Profile& p, int cap) {
  if (p.size_u() > cap || p.size_w() > cap)
    throw Error(ErrorKind::TooLarge, "profile exceeds the oracle size cap of " + std::to_string(cap));
}

struct Variant {
  std::vector<int> order;
  std::int64_t dist;
};

// All reorderings of one list within distance d, identity first, grown
// one adjacent swap at a time.
std::vector<Variant> list_variants(std::span<const int> list, int d) {
  std::vector<Variant> out{{std::vector<int>(list.begin(), list.end()), 0}};
  std::set<std::vector<int>> seen{out.front().order};
  for (std::size_t head = 0; head < out.size(); ++head) {
    if (out[head].dist == d) continue;
    for (std::size_t k = 0; k + 1 < list.size(); ++k) {
      std::vector<int> next = out[head].order;
      std::swap(next[k], next[k + 1]);
      if (seen.insert(next).second) out.push_back({std::move(next), out[head].dist + 1});
    }
  }
  return out;
}

}  // namespace

std::vector<Matching> enumerate_matchings(const Profile& p, int cap) {
  check_cap(p, cap);
  std::vector<Matching> out;
  Matching m(p.size_u(), p.size_w());
  std::function<void(int)> rec = [&](int u) {
    if (u == p.size_u()) {
      out.push_back(m);
      return;
    }
    rec(u + 1);
    for (int w : p.list_u(u))
      if (m.partner_of_w(w) == Matching::kNone) {
        m.add(u, w);
        rec(u + 1);
        m.remove_u(u);
      }
  };
  rec(0);
  return out;
}

std::vector<Matching> enumerate_stable_bf(const Profile& p, int cap) {
  auto all = enumerate_matchings(p, cap);
  std::erase_if(all, [&](const Matching& m) { return !is_stable(p, m); });
  std::sort(all.begin(), all.end());
  return all;
}

void for_each_profile_within(const Profile& p, int d, NearMode mode,
                             const std::function<bool(const Profile&, std::int64_t)>& visit, std::size_t cap) {
  std::vector<AgentId> agents;
  std::vector<std::vector<Variant>> variants;
  for (int u = 0; u < p.size_u(); ++u) agents.push_back(AgentId::u(u));
  for (int w = 0; w < p.size_w(); ++w) agents.push_back(AgentId::w(w));
  for (const auto& x : agents) variants.push_back(list_variants(p.list(x), d));

  std::size_t visited = 0;
  bool stop = false;
  std::function<void(std::size_t, const Profile&, std::int64_t)> rec = [&](std::size_t i, const Profile& cur,
                                                                           std::int64_t total) {
    if (stop) return;
    if (i == agents.size()) {
      if (++visited > cap) throw Error(ErrorKind::TooLarge, "profile ball exceeds the oracle cap");
      stop = visit(cur, total);
      return;
    }
    for (const auto& v : variants[i]) {
      if (mode == NearMode::Global && total + v.dist > d) continue;
      if (v.dist == 0) rec(i + 1, cur, total);
      else rec(i + 1, cur.with_list(agents[i], v.order), total + v.dist);
      if (stop) return;
    }
  };
  rec(0, p, 0);
}

std::vector<Profile> profiles_within(const Profile& p, int d, NearMode mode, std::size_t cap) {
  std::vector<Profile> out;
  for_each_profile_within(
      p, d, mode,
      [&](const Profile& q, std::int64_t) {
        out.push_back(q);
        return false;
      },
      cap);
  return out;
}

bool brute_is_d_robust(const Profile& p, const Matching& m, int d) {
  bool robust = true;
  for_each_profile_within(p, d, NearMode::Global, [&](const Profile& q, std::int64_t) {
    robust = is_stable(q, m);
    return !robust;
  });
  return robust;
}

std::optional<std::int64_t> brute_global_cost(const Profile& p, const Matching& m, int maxRadius) {
  std::optional<std::int64_t> best;
  for_each_profile_within(p, maxRadius, NearMode::Global, [&](const Profile& q, std::int64_t dist) {
    if ((!best || dist < *best) && is_stable(q, m)) best = dist;
    return best == 0;
  });
  return best;
}

bool brute_nearly_stable(const Profile& p, const Matching& m, int budget, NearMode mode) {
  bool found = false;
  for_each_profile_within(p, budget, mode, [&](const Profile& q, std::int64_t) {
    found = is_stable(q, m);
    return found;
  });
  return found;
}

std::optional<BruteNear> brute_solve_near(const Profile& p, int budget, NearMode mode, Objective objective,
                                          std::optional<std::int64_t> eta) {
  for (const auto& m : enumerate_matchings(p)) {
    if (objective == Objective::Perfect && !is_perfect(p, m)) continue;
    if (objective == Objective::Egalitarian && eta && egalitarian_cost(p, m) > *eta) continue;
    std::optional<Profile> witness;
    for_each_profile_within(p, budget, mode, [&](const Profile& q, std::int64_t) {
      if (is_stable(q, m)) witness = q;
      return witness.has_value();
    });
    if (witness) return BruteNear{m, *witness};
  }
  return std::nullopt;
}

std::optional<std::int64_t> brute_min_cost_near(const Profile& p, int budget, NearMode mode) {
  std::optional<std::int64_t> best;
  for (const auto& m : enumerate_matchings(p)) {
    const std::int64_t c = egalitarian_cost(p, m);
    if (best && c >= *best) continue;
    if (brute_nearly_stable(p, m, budget, mode)) best = c;
  }
  return best;
}

}  // namespace robmatch::oracle
