#include "robmatch/robustness.hpp"

#include <algorithm>

#include "robmatch/stability.hpp"

namespace robmatch {

namespace {

void check_quadruple_shape(const Profile& p, const StableQuadruple& q) {
  auto inU = [&](int x) { return x >= 0 && x < p.size_u(); };
  auto inW = [&](int x) { return x >= 0 && x < p.size_w(); };
  const bool ok = inU(q.u_star) && inW(q.w_star) && (q.u == kUnmatched || inU(q.u)) &&
                  (q.w == kUnmatched || inW(q.w)) && !(q.u == kUnmatched && q.w == kUnmatched) &&
                  q.u != q.u_star && q.w != q.w_star && p.acceptable(q.u_star, q.w_star) &&
                  (q.w == kUnmatched || p.acceptable(q.u_star, q.w)) &&
                  (q.u == kUnmatched || p.acceptable(q.u, q.w_star));
  if (!ok) throw Error(ErrorKind::InvalidInput, "not a quadruple of this profile");
}

// Move `mover` forward until it sits right in front of `target`.
void shift_forward(AgentId owner, std::span<const int> list, int mover, int target, int moverRank,
                   int targetRank, std::vector<int>& out, std::vector<SwapOp>& swaps) {
  out.assign(list.begin(), list.end());
  if (target == kUnmatched || moverRank <= targetRank) return;
  for (int k = moverRank - 1; k >= targetRank; --k) {
    swaps.push_back({owner, out[k], mover});
    std::swap(out[k], out[k + 1]);
  }
}

int position(const std::vector<int>& list, int x) {
  return static_cast<int>(std::find(list.begin(), list.end(), x) - list.begin());
}

// After the shift only {u*, w*} can block; test it on the shifted lists.
bool shift_breaks(const Profile& p, const Matching& m, const StableQuadruple& q, const SwapSet& s) {
  if (m.contains(q.u_star, q.w_star)) return false;
  const int mu = m.partner_of_u(q.u_star);
  const int mw = m.partner_of_w(q.w_star);
  const bool uWants = mu == Matching::kNone || position(s.shifted_u, q.w_star) < position(s.shifted_u, mu);
  const bool wWants = mw == Matching::kNone || position(s.shifted_w, q.u_star) < position(s.shifted_w, mw);
  (void)p;
  return uWants && wWants;
}

void set_unique(std::vector<int>& table, std::size_t at, int rot) {
  if (table[at] != -1 && table[at] != rot) throw Error(ErrorKind::Internal, "rotation table entry is not unique");
  table[at] = rot;
}

void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

int swap_set_size(const Profile& p, const StableQuadruple& q) {
  int size = 0;
  if (q.w != kUnmatched) size += std::max(p.rank_u(q.u_star, q.w_star) - p.rank_u(q.u_star, q.w), 0);
  if (q.u != kUnmatched) size += std::max(p.rank_w(q.w_star, q.u_star) - p.rank_w(q.w_star, q.u), 0);
  return size;
}

SwapSet swap_set(const Profile& p, const StableQuadruple& q) {
  check_quadruple_shape(p, q);
  SwapSet s;
  const AgentId us = AgentId::u(q.u_star);
  const AgentId ws = AgentId::w(q.w_star);
  shift_forward(us, p.list(us), q.w_star, q.w, p.rank_u(q.u_star, q.w_star),
                q.w == kUnmatched ? 0 : p.rank_u(q.u_star, q.w), s.shifted_u, s.swaps);
  shift_forward(ws, p.list(ws), q.u_star, q.u, p.rank_w(q.w_star, q.u_star),
                q.u == kUnmatched ? 0 : p.rank_w(q.w_star, q.u), s.shifted_w, s.swaps);
  return s;
}

Profile shifted_profile(const Profile& p, const StableQuadruple& q) {
  SwapSet s = swap_set(p, q);
  return p.with_list(AgentId::u(q.u_star), std::move(s.shifted_u))
      .with_list(AgentId::w(q.w_star), std::move(s.shifted_w));
}

bool co_stable(const RotationDigraph& g, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<int> prods, conss;
  for (auto [x, y] : pairs) {
    const int prod = g.producer(x, y);
    if (prod == -1 && !g.u_optimal().contains(x, y)) return false;
    if (prod != -1) prods.push_back(prod);
    const int cons = g.consumer(x, y);
    if (cons != -1) conss.push_back(cons);
  }
  for (int b : conss)
    for (int a : prods)
      if (b == a || g.precedes(b, a)) return false;
  return true;
}

bool is_stable_quadruple(const Profile& p, const RotationDigraph& g, const StableQuadruple& q) {
  const auto all = stable_quadruples(p, g);
  return std::binary_search(all.begin(), all.end(), q);
}

std::vector<StableQuadruple> stable_quadruples(const Profile& p, const RotationDigraph& g,
                                               std::optional<int> maxSwapSetSize) {
  std::vector<std::pair<int, int>> sp = g.w_optimal().pairs();
  for (const auto& r : g.rotations()) sp.insert(sp.end(), r.pairs.begin(), r.pairs.end());
  std::sort(sp.begin(), sp.end());
  sp.erase(std::unique(sp.begin(), sp.end()), sp.end());

  std::vector<StableQuadruple> out;
  auto keep = [&](const StableQuadruple& q) {
    if (!maxSwapSetSize || swap_set_size(p, q) <= *maxSwapSetSize) out.push_back(q);
  };
  for (auto [us, w] : sp)
    for (auto [u, ws] : sp) {
      if (u == us || w == ws || !p.acceptable(us, ws)) continue;
      if (co_stable(g, {{us, w}, {u, ws}})) keep({us, ws, u, w});
    }

  const Matching& top = g.u_optimal();
  for (int us = 0; us < p.size_u(); ++us) {
    if (top.partner_of_u(us) != Matching::kNone) continue;
    for (int ws : p.list_u(us))
      for (auto [u, w2] : sp)
        if (w2 == ws) keep({us, ws, u, kUnmatched});
  }
  for (int ws = 0; ws < p.size_w(); ++ws) {
    if (top.partner_of_w(ws) != Matching::kNone) continue;
    for (int us : p.list_w(ws))
      for (auto [u2, w] : sp)
        if (u2 == us) keep({us, ws, kUnmatched, w});
  }
  std::sort(out.begin(), out.end());
  return out;
}

RotationTables RotationTables::build(const Profile& p, const RotationDigraph& g) {
  RotationTables t;
  t.nW_ = p.size_w();
  const std::size_t cells = static_cast<std::size_t>(p.size_u()) * p.size_w();
  for (auto* v : {&t.s1_, &t.s2_, &t.s3_, &t.t1_, &t.t2_, &t.t3_}) v->assign(cells, -1);

  for (int r = 0; r < g.size(); ++r) {
    const Rotation& rot = g.rotation(r);
    for (int i = 0; i < rot.size(); ++i) {
      const int u = rot.u_at(i);
      const int wi = rot.w_at(i);
      const int wn = rot.w_next(i);
      set_unique(t.s1_, t.at_u(u, wn), r);
      set_unique(t.s3_, t.at_u(u, wi), r);
      set_unique(t.t1_, t.at_u(u, wn), r);   // wn gains u
      set_unique(t.t3_, t.at_u(u, wi), r);   // wi loses u
      const auto lu = p.list_u(u);
      for (int k = p.rank_u(u, wi) + 1; k < p.rank_u(u, wn); ++k) set_unique(t.s2_, t.at_u(u, lu[k]), r);
      // w_i moves from u_i up to u_{i-1}.
      const int up = rot.u_prev(i);
      const auto lw = p.list_w(wi);
      for (int k = p.rank_w(wi, up) + 1; k < p.rank_w(wi, u); ++k) set_unique(t.t2_, t.at_u(lw[k], wi), r);
    }
  }
  for (std::size_t c = 0; c < cells; ++c) {
    if (t.s2_[c] != -1 && (t.s1_[c] != -1 || t.s3_[c] != -1))
      throw Error(ErrorKind::Internal, "sigma2 coexists with sigma1 or sigma3");
    if (t.t2_[c] != -1 && (t.t1_[c] != -1 || t.t3_[c] != -1))
      throw Error(ErrorKind::Internal, "tau2 coexists with tau1 or tau3");
  }
  return t;
}

int pi_of(const RotationTables& t, const Profile& p, const StableQuadruple& q) {
  if (q.w == kUnmatched) return -1;
  if (p.rank_u(q.u_star, q.w_star) < p.rank_u(q.u_star, q.w)) {
    const int s3 = t.sigma3(q.u_star, q.w_star);
    return s3 != -1 ? s3 : t.sigma2(q.u_star, q.w_star);
  }
  return t.sigma1(q.u_star, q.w);
}

int rho_of(const RotationTables& t, const Profile& p, const StableQuadruple& q) {
  if (q.u == kUnmatched) return -1;
  if (p.rank_w(q.w_star, q.u_star) < p.rank_w(q.w_star, q.u)) {
    const int t1 = t.tau1(q.w_star, q.u_star);
    return t1 != -1 ? t1 : t.tau2(q.w_star, q.u_star);
  }
  return t.tau3(q.w_star, q.u);
}

RobustnessCheck is_d_robust(const Profile& p, const Matching& m, int d) {
  RobustnessCheck out;
  const auto bps = blocking_pairs(p, m);
  if (!bps.empty()) {
    out.blocking_in_p = bps.front();
    out.witness = p;
    return out;
  }
  const auto g = RotationDigraph::build(p);
  for (const auto& q : stable_quadruples(p, g, d)) {
    SwapSet s = swap_set(p, q);
    if (!shift_breaks(p, m, q, s)) continue;
    out.quadruple = q;
    out.witness_swaps = s.swaps;
    out.witness = p.with_list(AgentId::u(q.u_star), std::move(s.shifted_u))
                      .with_list(AgentId::w(q.w_star), std::move(s.shifted_w));
    return out;
  }
  out.robust = true;
  return out;
}

namespace {

struct Constraints {
  std::optional<StableQuadruple> unresolvable;
  std::vector<std::pair<int, int>> arcs;  // (rho, pi)
  std::vector<int> A;
  std::vector<int> D;
};

Constraints collect(const Profile& p, const RotationDigraph& g, int d) {
  const auto t = RotationTables::build(p, g);
  Constraints c;
  for (const auto& q : stable_quadruples(p, g, d)) {
    const int pi = pi_of(t, p, q);
    const int rho = rho_of(t, p, q);
    if (pi == -1 && rho == -1) {
      c.unresolvable = q;
      return c;
    }
    if (pi != -1 && rho != -1) c.arcs.emplace_back(rho, pi);
    else if (pi != -1) c.D.push_back(pi);
    else c.A.push_back(rho);
  }
  std::sort(c.arcs.begin(), c.arcs.end());
  c.arcs.erase(std::unique(c.arcs.begin(), c.arcs.end()), c.arcs.end());
  sort_unique(c.A);
  sort_unique(c.D);
  return c;
}

}  // namespace

RobustTrace find_d_robust_traced(const Profile& p, int d) {
  const auto g = RotationDigraph::build(p);
  auto c = collect(p, g, d);
  RobustTrace tr;
  tr.unresolvable = c.unresolvable;
  if (c.unresolvable) return tr;
  tr.added_arcs = c.arcs;
  tr.A = c.A;
  tr.D = c.D;

  const int k = g.size();
  std::vector<std::vector<int>> out(k), in(k);
  for (auto [a, b] : g.arcs()) {
    out[a].push_back(b);
    in[b].push_back(a);
  }
  for (auto [a, b] : c.arcs) {
    out[a].push_back(b);
    in[b].push_back(a);
  }
  std::vector<char> removed(k, 0);
  std::vector<int> stack = c.D;
  for (int v : stack) removed[v] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int x : out[v])
      if (!removed[x]) {
        removed[x] = 1;
        stack.push_back(x);
      }
  }
  for (int v = 0; v < k; ++v)
    if (removed[v]) tr.removed.push_back(v);
  for (int a : c.A)
    if (removed[a]) return tr;

  std::vector<char> inT(k, 0);
  stack = c.A;
  for (int v : stack) inT[v] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int x : in[v])
      if (!inT[x] && !removed[x]) {
        inT[x] = 1;
        stack.push_back(x);
      }
  }
  for (int v = 0; v < k; ++v)
    if (inT[v]) tr.T.push_back(v);
  tr.matching = g.matching_of(tr.T);
  return tr;
}

std::optional<Matching> find_d_robust(const Profile& p, int d) { return find_d_robust_traced(p, d).matching; }

std::optional<Matching> find_d_robust_optimal(const Profile& p, int d, Objective objective) {
  if (objective == Objective::Any) return find_d_robust(p, d);
  if (objective == Objective::Perfect) {
    if (p.size_u() != p.size_w() || matched_partition(p).n_unmatched != 0) return std::nullopt;
    return find_d_robust(p, d);
  }
  const auto g = RotationDigraph::build(p);
  const auto c = collect(p, g, d);
  if (c.unresolvable) return std::nullopt;
  std::vector<std::pair<int, int>> implies;
  for (auto [rho, pi] : c.arcs) implies.emplace_back(pi, rho);
  const auto best = min_weight_closure(g, rotation_weights(p, g), c.A, c.D, implies);
  if (!best) return std::nullopt;
  return g.matching_of(*best);
}

std::optional<MaxRobustness> max_robustness(const Profile& p, int cap) {
  if (cap < 0) cap = std::max(p.size_u(), p.size_w());
  const auto g = RotationDigraph::build(p);
  int largestSwapSet = 0;
  for (const auto& q : stable_quadruples(p, g)) largestSwapSet = std::max(largestSwapSet, swap_set_size(p, q));
  std::int64_t ball = 0;
  for (int u = 0; u < p.size_u(); ++u) ball += static_cast<std::int64_t>(p.list_u(u).size()) * (p.list_u(u).size() - 1) / 2;
  for (int w = 0; w < p.size_w(); ++w) ball += static_cast<std::int64_t>(p.list_w(w).size()) * (p.list_w(w).size() - 1) / 2;

  std::optional<MaxRobustness> best;
  for (int d = 0; d <= std::min(cap, largestSwapSet); ++d) {
    auto m = find_d_robust(p, d);
    if (!m) return best;
    best = MaxRobustness{d, *m, false};
  }
  if (best && best->d == largestSwapSet) {
    // Nothing beyond the largest swap set can add a constraint.
    best->unbounded = true;
    best->d = static_cast<int>(std::min<std::int64_t>(cap, std::max<std::int64_t>(ball, largestSwapSet)));
  }
  return best;
}

}  // namespace robmatch
