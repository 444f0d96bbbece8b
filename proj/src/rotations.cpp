#include "robmatch/rotations.hpp"

#include <algorithm>

#include "robmatch/closure.hpp"
#include "robmatch/stability.hpp"

namespace robmatch {

void Rotation::canonicalize() {
  if (pairs.empty()) return;
  auto first = std::min_element(pairs.begin(), pairs.end());
  std::rotate(pairs.begin(), first, pairs.end());
}

std::optional<int> successor(const Profile& p, const Matching& m, int u) {
  const int mu = m.partner_of_u(u);
  if (mu == Matching::kNone)
    throw Error(ErrorKind::NoSuccessorDefined, p.name(AgentId::u(u)) + " is unmatched");
  const auto l = p.list_u(u);
  for (int k = p.rank_u(u, mu) + 1; k < static_cast<int>(l.size()); ++k) {
    const int w = l[k];
    const int mw = m.partner_of_w(w);
    if (mw == Matching::kNone || p.rank_w(w, u) < p.rank_w(w, mw)) return w;
  }
  return std::nullopt;
}

std::vector<Rotation> exposed_rotations(const Profile& p, const Matching& m) {
  if (!is_stable(p, m)) throw Error(ErrorKind::InvalidInput, "matching is not stable");
  const int nU = p.size_u();
  // next[u] = M(s(u)), the U agent u displaces.
  std::vector<int> next(nU, -1);
  for (int u = 0; u < nU; ++u) {
    if (m.partner_of_u(u) == Matching::kNone) continue;
    // An unmatched successor stays unmatched in every stable matching, so u is stuck.
    if (auto s = successor(p, m, u)) next[u] = m.partner_of_w(*s);
  }
  std::vector<int> state(nU, 0);  // 0 new, 1 on current path, 2 done
  std::vector<Rotation> out;
  for (int start = 0; start < nU; ++start) {
    if (state[start] != 0) continue;
    std::vector<int> path;
    int v = start;
    while (v != -1 && state[v] == 0) {
      state[v] = 1;
      path.push_back(v);
      v = next[v];
    }
    if (v != -1 && state[v] == 1) {
      Rotation r;
      auto it = std::find(path.begin(), path.end(), v);
      for (; it != path.end(); ++it) r.pairs.emplace_back(*it, m.partner_of_u(*it));
      r.canonicalize();
      out.push_back(std::move(r));
    }
    for (int x : path) state[x] = 2;
  }
  std::sort(out.begin(), out.end());
  return out;
}

Matching eliminate(const Matching& m, const Rotation& rho) {
  for (auto [u, w] : rho.pairs)
    if (!m.contains(u, w)) throw Error(ErrorKind::InvalidInput, "rotation is not contained in the matching");
  Matching out = m;
  for (auto [u, w] : rho.pairs) out.remove_u(u);
  for (int i = 0; i < rho.size(); ++i) out.add(rho.u_at(i), rho.w_next(i));
  return out;
}

RotationDigraph RotationDigraph::build(const Profile& p) {
  RotationDigraph g;
  g.nU_ = p.size_u();
  g.nW_ = p.size_w();
  g.top_ = robmatch::u_optimal(p);
  g.producer_.assign(static_cast<std::size_t>(g.nU_) * g.nW_, -1);
  g.consumer_.assign(static_cast<std::size_t>(g.nU_) * g.nW_, -1);

  // Walk one maximal chain; every rotation appears on it exactly once.
  Matching m = g.top_;
  for (;;) {
    auto exposed = exposed_rotations(p, m);
    if (exposed.empty()) break;
    const Rotation& r = exposed.front();
    const int idx = g.size();
    for (int i = 0; i < r.size(); ++i) {
      const auto at = [&](int u, int w) { return static_cast<std::size_t>(u) * g.nW_ + w; };
      if (g.consumer_[at(r.u_at(i), r.w_at(i))] != -1 || g.producer_[at(r.u_at(i), r.w_next(i))] != -1)
        throw Error(ErrorKind::Internal, "pair moved by two rotations");
      g.consumer_[at(r.u_at(i), r.w_at(i))] = idx;
      g.producer_[at(r.u_at(i), r.w_next(i))] = idx;
    }
    m = eliminate(m, r);
    g.rotations_.push_back(r);
  }
  g.bottom_ = m;

  const int k = g.size();
  std::vector<char> direct(static_cast<std::size_t>(k) * k, 0);
  // For each w: rotations giving w a new partner, as (rotation, old, new).
  struct Move {
    int rot, from, to;
  };
  std::vector<std::vector<Move>> movesOfW(static_cast<std::size_t>(g.nW_));
  for (int r = 0; r < k; ++r) {
    const Rotation& rot = g.rotations_[r];
    for (int j = 0; j < rot.size(); ++j) movesOfW[rot.w_at(j)].push_back({r, rot.u_at(j), rot.u_prev(j)});
  }
  for (int r = 0; r < k; ++r) {
    const Rotation& rot = g.rotations_[r];
    for (int i = 0; i < rot.size(); ++i) {
      const int u = rot.u_at(i);
      const int wi = rot.w_at(i);
      const int prod = g.producer(u, wi);
      if (prod != -1) direct[static_cast<std::size_t>(prod) * k + r] = 1;
      const auto l = p.list_u(u);
      for (int pos = p.rank_u(u, wi) + 1; pos < p.rank_u(u, rot.w_next(i)); ++pos) {
        const int w = l[pos];
        for (const Move& mv : movesOfW[w])
          if (p.rank_w(w, mv.to) < p.rank_w(w, u) && p.rank_w(w, u) < p.rank_w(w, mv.from))
            direct[static_cast<std::size_t>(mv.rot) * k + r] = 1;
      }
    }
  }
  for (int a = 0; a < k; ++a)
    for (int b = 0; b <= a; ++b)
      if (direct[static_cast<std::size_t>(a) * k + b])
        throw Error(ErrorKind::Internal, "precedence arc against discovery order");

  // Reachability, then keep only arcs not implied by longer paths.
  g.reach_.assign(static_cast<std::size_t>(k) * k, 0);
  for (int a = k - 1; a >= 0; --a)
    for (int b = a + 1; b < k; ++b)
      if (direct[static_cast<std::size_t>(a) * k + b]) {
        g.reach_[static_cast<std::size_t>(a) * k + b] = 1;
        for (int c = b + 1; c < k; ++c)
          if (g.reach_[static_cast<std::size_t>(b) * k + c]) g.reach_[static_cast<std::size_t>(a) * k + c] = 1;
      }
  g.preds_.assign(k, {});
  g.succs_.assign(k, {});
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      if (!g.reach_[static_cast<std::size_t>(a) * k + b]) continue;
      bool implied = false;
      for (int c = a + 1; c < b && !implied; ++c)
        implied = g.reach_[static_cast<std::size_t>(a) * k + c] && g.reach_[static_cast<std::size_t>(c) * k + b];
      if (implied) continue;
      g.arcs_.emplace_back(a, b);
      g.preds_[b].push_back(a);
      g.succs_[a].push_back(b);
    }
  return g;
}

bool RotationDigraph::is_closed(std::span<const int> subset) const {
  std::vector<char> in(static_cast<std::size_t>(size()), 0);
  for (int r : subset) {
    if (r < 0 || r >= size()) return false;
    in[r] = 1;
  }
  for (int r : subset)
    for (int q : preds(r))
      if (!in[q]) return false;
  return true;
}

Matching RotationDigraph::matching_of(std::span<const int> subset) const {
  if (!is_closed(subset)) throw Error(ErrorKind::NotClosed, "rotation subset is not predecessor-closed");
  std::vector<int> order(subset.begin(), subset.end());
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  Matching m = top_;
  for (int r : order) m = eliminate(m, rotation(r));
  return m;
}

void RotationDigraph::for_each_closed_subset(const std::function<void(const std::vector<int>&)>& visit) const {
  std::vector<char> in(static_cast<std::size_t>(size()), 0);
  std::vector<int> chosen;
  std::function<void(int)> rec = [&](int i) {
    if (i == size()) {
      visit(chosen);
      return;
    }
    rec(i + 1);
    for (int q : preds(i))
      if (!in[q]) return;
    in[i] = 1;
    chosen.push_back(i);
    rec(i + 1);
    chosen.pop_back();
    in[i] = 0;
  };
  rec(0);
}

std::vector<int> RotationDigraph::predecessor_closure(std::span<const int> seeds) const {
  std::vector<char> in(static_cast<std::size_t>(size()), 0);
  for (int s : seeds) {
    in[s] = 1;
    for (int a = 0; a < s; ++a)
      if (precedes(a, s)) in[a] = 1;
  }
  std::vector<int> out;
  for (int r = 0; r < size(); ++r)
    if (in[r]) out.push_back(r);
  return out;
}

std::vector<Matching> enumerate_stable_matchings(const Profile& p) {
  const auto g = RotationDigraph::build(p);
  std::vector<Matching> out;
  g.for_each_closed_subset([&](const std::vector<int>& s) { out.push_back(g.matching_of(s)); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<int, int>> stable_pairs(const Profile& p) {
  const auto g = RotationDigraph::build(p);
  auto out = g.w_optimal().pairs();
  for (const auto& r : g.rotations())
    out.insert(out.end(), r.pairs.begin(), r.pairs.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::int64_t> rotation_weights(const Profile& cost, const RotationDigraph& g) {
  std::vector<std::int64_t> out;
  for (const auto& r : g.rotations()) {
    std::int64_t delta = 0;
    for (int i = 0; i < r.size(); ++i) {
      const int u = r.u_at(i);
      const int wn = r.w_next(i);
      delta += cost.rank_u(u, wn) - cost.rank_u(u, r.w_at(i));
      delta += cost.rank_w(wn, u) - cost.rank_w(wn, r.u_at((i + 1) % r.size()));
    }
    out.push_back(delta);
  }
  return out;
}

std::optional<std::vector<int>> min_weight_closure(const RotationDigraph& g,
                                                   const std::vector<std::int64_t>& weights,
                                                   const std::vector<int>& forced,
                                                   const std::vector<int>& forbidden,
                                                   const std::vector<std::pair<int, int>>& extra) {
  std::vector<std::pair<int, int>> implies;
  for (auto [a, b] : g.arcs()) implies.emplace_back(b, a);
  implies.insert(implies.end(), extra.begin(), extra.end());
  return min_weight_closure(g.size(), weights, implies, forced, forbidden);
}

}  // namespace robmatch
