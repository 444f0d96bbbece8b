#include "robmatch/near_stability.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <set>

#include "robmatch/closure.hpp"
#include "robmatch/rotations.hpp"
#include "robmatch/stability.hpp"

namespace robmatch {

namespace {

constexpr int kInfCost = std::numeric_limits<int>::max();

// Improvement each side of a blocking pair would need; kInfCost for an
// unmatched agent.
std::pair<int, int> pair_costs(const Profile& p, const Matching& m, int u, int w) {
  const int mu = m.partner_of_u(u);
  const int mw = m.partner_of_w(w);
  const int a = mu == Matching::kNone ? kInfCost : p.rank_u(u, mu) - p.rank_u(u, w);
  const int b = mw == Matching::kNone ? kInfCost : p.rank_w(w, mw) - p.rank_w(w, u);
  return {a, b};
}

// Move M(x) forward by `by` places in x's list.
std::vector<int> promote_partner(std::span<const int> list, int partnerRank, int by) {
  std::vector<int> out(list.begin(), list.end());
  std::rotate(out.begin() + (partnerRank - by), out.begin() + partnerRank, out.begin() + partnerRank + 1);
  return out;
}

Profile apply_promotions(const Profile& p, const Matching& m, const std::vector<int>& byU,
                         const std::vector<int>& byW) {
  Profile out = p;
  for (int u = 0; u < p.size_u(); ++u)
    if (byU[u] > 0) {
      const int r = p.rank_u(u, m.partner_of_u(u));
      out = out.with_list(AgentId::u(u), promote_partner(p.list_u(u), r, byU[u]));
    }
  for (int w = 0; w < p.size_w(); ++w)
    if (byW[w] > 0) {
      const int r = p.rank_w(w, m.partner_of_w(w));
      out = out.with_list(AgentId::w(w), promote_partner(p.list_w(w), r, byW[w]));
    }
  return out;
}

std::vector<int> flatten(const Profile& p) {
  std::vector<int> key;
  for (int u = 0; u < p.size_u(); ++u) {
    key.push_back(-1);
    key.insert(key.end(), p.list_u(u).begin(), p.list_u(u).end());
  }
  for (int w = 0; w < p.size_w(); ++w) {
    key.push_back(-1);
    key.insert(key.end(), p.list_w(w).begin(), p.list_w(w).end());
  }
  return key;
}

// Breadth-first over the swap ball; `visit` returns true to stop.
void visit_swap_ball(const Profile& p, int radius, const std::function<bool(const Profile&, int)>& visit) {
  std::set<std::vector<int>> seen{flatten(p)};
  std::deque<std::pair<Profile, int>> queue{{p, 0}};
  while (!queue.empty()) {
    auto [cur, dist] = std::move(queue.front());
    queue.pop_front();
    if (visit(cur, dist)) return;
    if (dist == radius) continue;
    for (int side = 0; side < 2; ++side) {
      const Side s = side == 0 ? Side::U : Side::W;
      for (int x = 0; x < cur.size(s); ++x) {
        const AgentId owner{s, x};
        const auto l = cur.list(owner);
        for (std::size_t k = 0; k + 1 < l.size(); ++k) {
          Profile next = apply_swap(cur, {owner, l[k], l[k + 1]});
          if (seen.insert(flatten(next)).second) queue.emplace_back(std::move(next), dist + 1);
        }
      }
    }
  }
}

// Stable matching of q with the smallest egalitarian cost measured in p.
std::pair<Matching, std::int64_t> cheapest_stable(const Profile& p, const Profile& q) {
  const auto g = RotationDigraph::build(q);
  const auto best = min_weight_closure(g, rotation_weights(p, g), {}, {});
  Matching m = g.matching_of(*best);
  return {m, egalitarian_cost(p, m)};
}

bool perfect_ruled_out(const Profile& p, int budget, NearMode mode) {
  if (p.size_u() != p.size_w()) return true;
  const auto part = matched_partition(p);
  int unmatchedU = 0, unmatchedW = 0;
  for (const auto& x : part.unmatched) (x.side == Side::U ? unmatchedU : unmatchedW)++;
  const int matchedU = p.size_u() - unmatchedU;
  const int matchedW = p.size_w() - unmatchedW;
  // Never-matched agents only find each other acceptable through the
  // always-matched agents of the other side.
  if (unmatchedU > matchedW || unmatchedW > matchedU) return true;
  if (mode == NearMode::Global && budget < (part.n_unmatched + 1) / 2) return true;
  return false;
}

}  // namespace

SwapDistance local_instability(const Profile& p, const Matching& m) {
  int worst = 0;
  for (const auto& bp : blocking_pairs(p, m)) {
    auto [a, b] = pair_costs(p, m, bp.u, bp.w);
    const int c = std::min(a, b);
    if (c == kInfCost) return SwapDistance::infinite();
    worst = std::max(worst, c);
  }
  return SwapDistance(worst);
}

bool is_locally_d_nearly_stable(const Profile& p, const Matching& m, int dL) {
  return local_instability(p, m).within(dL);
}

Profile witness_profile_local(const Profile& p, const Matching& m, int dL) {
  if (!is_locally_d_nearly_stable(p, m, dL))
    throw Error(ErrorKind::NotNearlyStable, "matching is not locally " + std::to_string(dL) + "-nearly stable");
  std::vector<int> byU(p.size_u(), 0), byW(p.size_w(), 0);
  for (const auto& bp : blocking_pairs(p, m)) {
    auto [a, b] = pair_costs(p, m, bp.u, bp.w);
    // Ties go to side W.
    if (a < b) byU[bp.u] = std::max(byU[bp.u], a);
    else byW[bp.w] = std::max(byW[bp.w], b);
  }
  return apply_promotions(p, m, byU, byW);
}

GlobalCost global_stabilization_cost(const Profile& p, const Matching& m) {
  const auto bps = blocking_pairs(p, m);
  GlobalCost out;
  if (bps.empty()) {
    out.cost = SwapDistance(0);
    out.witness = p;
    return out;
  }
  // Node A(u,k), k = 1..rank of M(u): "u promotes M(u) by at least k", true
  // on the source side. Node B(w,k) likewise but true on the sink side.
  std::vector<int> baseU(p.size_u()), baseW(p.size_w()), lenU(p.size_u(), 0), lenW(p.size_w(), 0);
  int nodes = 0;
  for (int u = 0; u < p.size_u(); ++u) {
    baseU[u] = nodes;
    if (m.partner_of_u(u) != Matching::kNone) lenU[u] = p.rank_u(u, m.partner_of_u(u));
    nodes += lenU[u];
  }
  for (int w = 0; w < p.size_w(); ++w) {
    baseW[w] = nodes;
    if (m.partner_of_w(w) != Matching::kNone) lenW[w] = p.rank_w(w, m.partner_of_w(w));
    nodes += lenW[w];
  }
  const int s = nodes;
  const int t = nodes + 1;
  MaxFlow flow(nodes + 2);
  for (int u = 0; u < p.size_u(); ++u)
    for (int k = 1; k <= lenU[u]; ++k) {
      flow.add_arc(baseU[u] + k - 1, t, 1);
      if (k > 1) flow.add_arc(baseU[u] + k - 1, baseU[u] + k - 2, MaxFlow::kInf);
    }
  for (int w = 0; w < p.size_w(); ++w)
    for (int k = 1; k <= lenW[w]; ++k) {
      flow.add_arc(s, baseW[w] + k - 1, 1);
      if (k > 1) flow.add_arc(baseW[w] + k - 2, baseW[w] + k - 1, MaxFlow::kInf);
    }
  for (const auto& bp : bps) {
    auto [a, b] = pair_costs(p, m, bp.u, bp.w);
    if (a == kInfCost && b == kInfCost) {
      out.cost = SwapDistance::infinite();
      return out;
    }
    const int A = a == kInfCost ? -1 : baseU[bp.u] + a - 1;
    const int B = b == kInfCost ? -1 : baseW[bp.w] + b - 1;
    if (A < 0) flow.add_arc(B, t, MaxFlow::kInf);
    else if (B < 0) flow.add_arc(s, A, MaxFlow::kInf);
    else flow.add_arc(B, A, MaxFlow::kInf);
  }
  const std::int64_t cut = flow.run(s, t);
  const auto side = flow.source_side(s);
  std::vector<int> byU(p.size_u(), 0), byW(p.size_w(), 0);
  for (int u = 0; u < p.size_u(); ++u)
    for (int k = 1; k <= lenU[u]; ++k)
      if (side[baseU[u] + k - 1]) byU[u] = k;
  for (int w = 0; w < p.size_w(); ++w)
    for (int k = 1; k <= lenW[w]; ++k)
      if (!side[baseW[w] + k - 1]) byW[w] = k;
  out.cost = SwapDistance(cut);
  out.witness = apply_promotions(p, m, byU, byW);
  out.swaps = swap_sequence(p, *out.witness);
  return out;
}

std::optional<NearSolution> solve_global_near(const Profile& p, int dG, Objective objective,
                                              std::optional<std::int64_t> eta) {
  if (objective == Objective::Egalitarian && !eta)
    throw Error(ErrorKind::Usage, "egalitarian objective needs a cost bound");
  if (objective == Objective::Perfect && perfect_ruled_out(p, dG, NearMode::Global)) return std::nullopt;
  std::optional<NearSolution> found;
  visit_swap_ball(p, dG, [&](const Profile& q, int) {
    switch (objective) {
      case Objective::Any: {
        Matching m = u_optimal(q);
        found = NearSolution{m, q, egalitarian_cost(p, m)};
        return true;
      }
      case Objective::Perfect: {
        if (matched_partition(q).n_unmatched != 0) return false;
        Matching m = u_optimal(q);
        found = NearSolution{m, q, egalitarian_cost(p, m)};
        return true;
      }
      case Objective::Egalitarian: {
        auto [m, cost] = cheapest_stable(p, q);
        if (cost > *eta) return false;
        found = NearSolution{m, q, cost};
        return true;
      }
    }
    return false;
  });
  return found;
}

std::optional<NearSolution> min_cost_global_near(const Profile& p, int dG) {
  std::optional<NearSolution> best;
  visit_swap_ball(p, dG, [&](const Profile& q, int) {
    auto [m, cost] = cheapest_stable(p, q);
    if (!best || cost < best->cost) best = NearSolution{m, q, cost};
    return false;
  });
  return best;
}

namespace {

class LocalSearch {
 public:
  LocalSearch(const Profile& p, int dL, Objective obj, std::optional<std::int64_t> bound, bool minimize)
      : p_(p), dL_(dL), obj_(obj), bound_(bound), minimize_(minimize), m_(p.size_u(), p.size_w()),
        lastU_(p.size_w(), -1) {
    for (int w = 0; w < p.size_w(); ++w)
      for (int u : p.list_w(w)) lastU_[w] = std::max(lastU_[w], u);
  }

  std::optional<Matching> run() {
    if (obj_ == Objective::Perfect && p_.size_u() != p_.size_w()) return std::nullopt;
    rec(0);
    return best_;
  }

 private:
  bool decided_w(int w, int processed) const {
    return m_.partner_of_w(w) != Matching::kNone || lastU_[w] < processed;
  }

  // Pairs whose outcome can no longer change must respect the bound.
  bool consistent(int processed) const {
    for (int u = 0; u < processed; ++u)
      for (int w : p_.list_u(u)) {
        if (!decided_w(w, processed) || m_.contains(u, w)) continue;
        auto [a, b] = pair_costs(p_, m_, u, w);
        if (a <= 0 || b <= 0) continue;
        if (std::min(a, b) > dL_) return false;
      }
    return true;
  }

  std::int64_t partial_cost(int processed) const {
    std::int64_t c = 0;
    for (int u = 0; u < processed; ++u) c += partner_rank(p_, m_, AgentId::u(u));
    for (int w = 0; w < p_.size_w(); ++w)
      if (decided_w(w, processed)) c += partner_rank(p_, m_, AgentId::w(w));
    return c;
  }

  bool prune(int processed) const {
    if (!consistent(processed)) return true;
    if (obj_ == Objective::Perfect)
      for (int w = 0; w < p_.size_w(); ++w)
        if (m_.partner_of_w(w) == Matching::kNone && lastU_[w] < processed) return true;
    if (obj_ == Objective::Egalitarian || minimize_) {
      const std::int64_t c = partial_cost(processed);
      if (bound_ && c > *bound_) return true;
      if (minimize_ && best_ && c >= bestCost_) return true;
    }
    return false;
  }

  bool rec(int u) {
    if (u == p_.size_u()) {
      if (prune(u)) return false;
      if (minimize_) {
        const std::int64_t c = egalitarian_cost(p_, m_);
        if (!best_ || c < bestCost_) {
          best_ = m_;
          bestCost_ = c;
        }
        return false;
      }
      best_ = m_;
      return true;
    }
    for (int w : p_.list_u(u)) {
      if (m_.partner_of_w(w) != Matching::kNone) continue;
      m_.add(u, w);
      const bool done = !prune(u + 1) && rec(u + 1);
      m_.remove_u(u);
      if (done) return true;
    }
    if (obj_ != Objective::Perfect && !prune(u + 1) && rec(u + 1)) return true;
    return false;
  }

  const Profile& p_;
  int dL_;
  Objective obj_;
  std::optional<std::int64_t> bound_;
  bool minimize_;
  Matching m_;
  std::vector<int> lastU_;
  std::optional<Matching> best_;
  std::int64_t bestCost_ = 0;
};

}  // namespace

std::optional<Matching> solve_local_near(const Profile& p, int dL, Objective objective,
                                         std::optional<std::int64_t> eta) {
  if (objective == Objective::Egalitarian && !eta)
    throw Error(ErrorKind::Usage, "egalitarian objective needs a cost bound");
  if (objective == Objective::Perfect && perfect_ruled_out(p, dL, NearMode::Local)) return std::nullopt;
  return LocalSearch(p, dL, objective, objective == Objective::Egalitarian ? eta : std::nullopt, false).run();
}

std::optional<Matching> min_cost_local_near(const Profile& p, int dL) {
  return LocalSearch(p, dL, Objective::Any, std::nullopt, true).run();
}

Matching repair_after_swap(const Profile& p1, const Matching& m1, const SwapOp& s) {
  if (!is_stable(p1, m1)) throw Error(ErrorKind::InvalidInput, "matching is not stable before the swap");
  const Profile p2 = apply_swap(p1, s);
  const auto bps = blocking_pairs(p2, m1);
  if (bps.empty()) return m1;
  if (bps.size() != 1) throw Error(ErrorKind::Internal, "one swap produced several blocking pairs");
  const auto [bu, bw] = bps.front();

  constexpr int kEmpty = Matching::kNone;
  Matching m = m1;
  int boxU = m.partner_of_w(bw);
  int boxW = m.partner_of_u(bu);
  m.remove_u(bu);
  m.remove_w(bw);
  m.add(bu, bw);

  // best blocking partner in m, or kEmpty
  const auto best_u = [&](int u) {
    for (int w : p2.list_u(u))
      if (is_blocking(p2, m, u, w)) return w;
    return kEmpty;
  };
  const auto best_w = [&](int w) {
    for (int u : p2.list_w(w))
      if (is_blocking(p2, m, u, w)) return u;
    return kEmpty;
  };
  const auto refill = [](int& box, int dropped) {
    if (dropped == kEmpty) return;
    if (box != kEmpty && box != dropped) throw Error(ErrorKind::Internal, "penalty box overflow");
    box = dropped;
  };

  // A boxed agent that got matched can still block with someone it likes
  // better, so it stays boxed; phases alternate until both are quiet.
  const int limit = 4 * (p2.size_u() + 1) * (p2.size_w() + 1);
  for (int round = 0; boxU != kEmpty || boxW != kEmpty; ++round) {
    if (round > limit) throw Error(ErrorKind::Internal, "penalty-box repair did not settle");
    while (boxU != kEmpty) {
      const int u = boxU;
      const int grab = best_u(u);
      if (grab == kEmpty) {
        boxU = kEmpty;
        break;
      }
      const int displaced = m.partner_of_w(grab);
      const int dropped = m.partner_of_u(u);
      m.remove_u(u);
      m.remove_w(grab);
      m.add(u, grab);
      refill(boxW, dropped);
      boxU = displaced;
    }
    while (boxW != kEmpty) {
      const int w = boxW;
      const int grab = best_w(w);
      if (grab == kEmpty) {
        boxW = kEmpty;
        break;
      }
      const int displaced = m.partner_of_u(grab);
      const int dropped = m.partner_of_w(w);
      m.remove_w(w);
      m.remove_u(grab);
      m.add(grab, w);
      refill(boxU, dropped);
      boxW = displaced;
    }
  }
  return m;
}

std::vector<TradeoffPoint> tradeoff_curve(const Profile& p, NearMode mode, int dMax, Objective objective) {
  std::vector<TradeoffPoint> out;
  for (int d = 0; d <= dMax; ++d) {
    TradeoffPoint pt{d, std::nullopt};
    if (objective == Objective::Perfect) {
      const bool ok = mode == NearMode::Global ? solve_global_near(p, d, Objective::Perfect).has_value()
                                               : solve_local_near(p, d, Objective::Perfect).has_value();
      pt.value = ok ? 1 : 0;
    } else if (mode == NearMode::Global) {
      if (auto s = min_cost_global_near(p, d)) pt.value = s->cost;
    } else {
      if (auto m = min_cost_local_near(p, d)) pt.value = egalitarian_cost(p, *m);
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace robmatch
