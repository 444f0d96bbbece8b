#include "robmatch/profile.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace robmatch {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Usage: return "Usage";
    case ErrorKind::UnknownAgent: return "UnknownAgent";
    case ErrorKind::NonAdjacentSwap: return "NonAdjacentSwap";
    case ErrorKind::InvalidMatching: return "InvalidMatching";
    case ErrorKind::AsymmetricAcceptability: return "AsymmetricAcceptability";
    case ErrorKind::DuplicateEntry: return "DuplicateEntry";
    case ErrorKind::NoSuccessorDefined: return "NoSuccessorDefined";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotNearlyStable: return "NotNearlyStable";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

std::string SwapDistance::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

struct ProfileBuilder {
  static Profile make(std::vector<std::vector<int>> listsU, std::vector<std::vector<int>> listsW,
                      std::vector<std::string> namesU, std::vector<std::string> namesW) {
    Profile p;
    p.listsU_ = std::move(listsU);
    p.listsW_ = std::move(listsW);
    p.namesU_ = std::move(namesU);
    p.namesW_ = std::move(namesW);
    p.build_ranks();
    return p;
  }
};

namespace {

std::vector<std::string> default_names(char prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

std::string agent_label(const RawProfile& raw, AgentId x) {
  const auto& names = x.side == Side::U ? raw.namesU : raw.namesW;
  if (x.index >= 0 && static_cast<std::size_t>(x.index) < names.size()) return names[x.index];
  return std::string(x.side == Side::U ? "u" : "w") + std::to_string(x.index + 1);
}

}  // namespace

ValidationReport validate_profile(const RawProfile& input, AcceptabilityPolicy policy) {
  ValidationReport report;
  RawProfile raw = input;
  const int nU = static_cast<int>(raw.listsU.size());
  const int nW = static_cast<int>(raw.listsW.size());
  if (raw.namesU.empty()) raw.namesU = default_names('u', nU);
  if (raw.namesW.empty()) raw.namesW = default_names('w', nW);
  if (static_cast<int>(raw.namesU.size()) != nU || static_cast<int>(raw.namesW.size()) != nW) {
    report.issues.push_back({ErrorKind::InvalidInput, AgentId::u(0), std::nullopt,
                             "name count does not match list count"});
    return report;
  }

  // Range and duplicate checks per list.
  auto scan = [&](Side side, std::vector<std::vector<int>>& lists, int otherSize) {
    for (int x = 0; x < static_cast<int>(lists.size()); ++x) {
      std::vector<char> seen(static_cast<std::size_t>(otherSize), 0);
      const AgentId owner{side, x};
      for (int y : lists[x]) {
        if (y < 0 || y >= otherSize) {
          report.issues.push_back({ErrorKind::UnknownAgent, owner, std::nullopt,
                                   agent_label(raw, owner) + " lists an unknown agent (index " +
                                       std::to_string(y) + ")"});
          continue;
        }
        if (seen[y]) {
          const AgentId other{opposite(side), y};
          report.issues.push_back({ErrorKind::DuplicateEntry, owner, other,
                                   agent_label(raw, owner) + " lists " + agent_label(raw, other) +
                                       " more than once"});
        }
        seen[y] = 1;
      }
    }
  };
  scan(Side::U, raw.listsU, nW);
  scan(Side::W, raw.listsW, nU);
  if (!report.issues.empty()) return report;

  std::vector<char> accU(static_cast<std::size_t>(nU) * nW, 0);
  std::vector<char> accW(static_cast<std::size_t>(nU) * nW, 0);
  for (int u = 0; u < nU; ++u)
    for (int w : raw.listsU[u]) accU[static_cast<std::size_t>(u) * nW + w] = 1;
  for (int w = 0; w < nW; ++w)
    for (int u : raw.listsW[w]) accW[static_cast<std::size_t>(u) * nW + w] = 1;

  auto asym = [&](AgentId owner, AgentId other) {
    return ProfileIssue{ErrorKind::AsymmetricAcceptability, owner, other,
                        agent_label(raw, owner) + " lists " + agent_label(raw, other) + " but " +
                            agent_label(raw, other) + " does not list " + agent_label(raw, owner)};
  };
  auto& sink = policy == AcceptabilityPolicy::Reject ? report.issues : report.warnings;
  for (int u = 0; u < nU; ++u)
    for (int w : raw.listsU[u])
      if (!accW[static_cast<std::size_t>(u) * nW + w]) sink.push_back(asym(AgentId::u(u), AgentId::w(w)));
  for (int w = 0; w < nW; ++w)
    for (int u : raw.listsW[w])
      if (!accU[static_cast<std::size_t>(u) * nW + w]) sink.push_back(asym(AgentId::w(w), AgentId::u(u)));
  if (!report.issues.empty()) return report;

  if (policy == AcceptabilityPolicy::Prune) {
    for (int u = 0; u < nU; ++u)
      std::erase_if(raw.listsU[u], [&](int w) { return !accW[static_cast<std::size_t>(u) * nW + w]; });
    for (int w = 0; w < nW; ++w)
      std::erase_if(raw.listsW[w], [&](int u) { return !accU[static_cast<std::size_t>(u) * nW + w]; });
  }
  report.profile = ProfileBuilder::make(std::move(raw.listsU), std::move(raw.listsW),
                                        std::move(raw.namesU), std::move(raw.namesW));
  return report;
}

Profile Profile::from_lists(std::vector<std::vector<int>> listsU, std::vector<std::vector<int>> listsW,
                            std::vector<std::string> namesU, std::vector<std::string> namesW) {
  RawProfile raw{std::move(namesU), std::move(namesW), std::move(listsU), std::move(listsW)};
  auto report = validate_profile(raw);
  if (!report.profile) {
    const auto& issue = report.issues.front();
    throw Error(issue.kind, issue.message);
  }
  return std::move(*report.profile);
}

void Profile::build_ranks() {
  const int nU = size_u();
  const int nW = size_w();
  rankU_.assign(static_cast<std::size_t>(nU) * nW, 0);
  rankW_.assign(static_cast<std::size_t>(nU) * nW, 0);
  for (int u = 0; u < nU; ++u) {
    const int len = static_cast<int>(listsU_[u].size());
    std::fill_n(rankU_.begin() + static_cast<std::ptrdiff_t>(u) * nW, nW, len);
    for (int k = 0; k < len; ++k) rankU_[static_cast<std::size_t>(u) * nW + listsU_[u][k]] = k;
  }
  for (int w = 0; w < nW; ++w) {
    const int len = static_cast<int>(listsW_[w].size());
    std::fill_n(rankW_.begin() + static_cast<std::ptrdiff_t>(w) * nU, nU, len);
    for (int k = 0; k < len; ++k) rankW_[static_cast<std::size_t>(w) * nU + listsW_[w][k]] = k;
  }
}

std::optional<AgentId> Profile::find(const std::string& n) const {
  for (int i = 0; i < size_u(); ++i)
    if (namesU_[i] == n) return AgentId::u(i);
  for (int i = 0; i < size_w(); ++i)
    if (namesW_[i] == n) return AgentId::w(i);
  return std::nullopt;
}

Profile Profile::with_list(AgentId owner, std::vector<int> order) const {
  const auto current = list(owner);
  std::vector<int> a(current.begin(), current.end());
  std::vector<int> b = order;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) throw Error(ErrorKind::InvalidInput, "replacement list changes the acceptable set of " + name(owner));

  Profile out = *this;
  auto& lists = owner.side == Side::U ? out.listsU_ : out.listsW_;
  auto& ranks = owner.side == Side::U ? out.rankU_ : out.rankW_;
  const int stride = owner.side == Side::U ? size_w() : size_u();
  lists[owner.index] = std::move(order);
  const auto& l = lists[owner.index];
  for (int k = 0; k < static_cast<int>(l.size()); ++k)
    ranks[static_cast<std::size_t>(owner.index) * stride + l[k]] = k;
  return out;
}

std::size_t Profile::content_hash() const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t v) { h = (h ^ v) * 1099511628211ull; };
  for (const auto& l : listsU_) {
    mix(0xfeed);
    for (int x : l) mix(static_cast<std::size_t>(x));
  }
  for (const auto& l : listsW_) {
    mix(0xbeef);
    for (int x : l) mix(static_cast<std::size_t>(x));
  }
  return h;
}

// --- Matching ---------------------------------------------------------------

Matching::Matching(int sizeU, int sizeW, std::span<const std::pair<int, int>> pairs)
    : Matching(sizeU, sizeW) {
  for (auto [u, w] : pairs) add(u, w);
}

void Matching::add(int u, int w) {
  if (u < 0 || u >= size_u() || w < 0 || w >= size_w())
    throw Error(ErrorKind::InvalidMatching, "pair refers to an agent outside the profile");
  if (partnerU_[u] != kNone || partnerW_[w] != kNone)
    throw Error(ErrorKind::InvalidMatching, "agent appears in more than one pair");
  partnerU_[u] = w;
  partnerW_[w] = u;
}

void Matching::remove_u(int u) {
  if (partnerU_[u] == kNone) return;
  partnerW_[partnerU_[u]] = kNone;
  partnerU_[u] = kNone;
}

void Matching::remove_w(int w) {
  if (partnerW_[w] == kNone) return;
  partnerU_[partnerW_[w]] = kNone;
  partnerW_[w] = kNone;
}

std::vector<std::pair<int, int>> Matching::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < size_u(); ++u)
    if (partnerU_[u] != kNone) out.emplace_back(u, partnerU_[u]);
  return out;
}

int Matching::pair_count() const {
  return static_cast<int>(std::count_if(partnerU_.begin(), partnerU_.end(), [](int w) { return w != kNone; }));
}

// --- ranks, swaps, distances -----------------------------------------------

int rank(const Profile& p, AgentId x, AgentId y) {
  if (x.side == y.side) throw Error(ErrorKind::Usage, "rank queried between agents of the same side");
  if (x.index < 0 || x.index >= p.size(x.side) || y.index < 0 || y.index >= p.size(y.side))
    throw Error(ErrorKind::UnknownAgent, "rank queried for an agent outside the profile");
  return p.rank_of(x, y.index);
}

Profile apply_swap(const Profile& p, const SwapOp& s) {
  if (s.owner.index < 0 || s.owner.index >= p.size(s.owner.side))
    throw Error(ErrorKind::UnknownAgent, "swap owner is outside the profile");
  const auto l = p.list(s.owner);
  const int len = static_cast<int>(l.size());
  const int otherSize = p.size(opposite(s.owner.side));
  auto pos = [&](int y) { return (y >= 0 && y < otherSize) ? p.rank_of(s.owner, y) : len; };
  const int a = pos(s.first);
  const int b = pos(s.second);
  if (a >= len || b >= len)
    throw Error(ErrorKind::UnknownAgent, "swap names an agent missing from " + p.name(s.owner) + "'s list");
  if (std::abs(a - b) != 1)
    throw Error(ErrorKind::NonAdjacentSwap, "swap pair is not adjacent in " + p.name(s.owner) + "'s list");
  std::vector<int> order(l.begin(), l.end());
  std::swap(order[a], order[b]);
  return p.with_list(s.owner, std::move(order));
}

SwapDistance list_swap_distance(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) return SwapDistance::infinite();
  std::vector<int> sa(a.begin(), a.end());
  std::vector<int> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return SwapDistance::infinite();
  // Position in b of each element, then count inversions of a's sequence.
  const int maxId = sa.empty() ? 0 : sa.back() + 1;
  std::vector<int> posB(static_cast<std::size_t>(maxId), 0);
  for (std::size_t k = 0; k < b.size(); ++k) posB[b[k]] = static_cast<int>(k);
  std::int64_t inv = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (posB[a[i]] > posB[a[j]]) ++inv;
  return SwapDistance(inv);
}

SwapDistance AgentDistances::total() const {
  SwapDistance t(0);
  for (const auto& d : u) t = t + d;
  for (const auto& d : w) t = t + d;
  return t;
}

SwapDistance AgentDistances::max() const {
  SwapDistance m(0);
  for (const auto& d : u) m = std::max(m, d);
  for (const auto& d : w) m = std::max(m, d);
  return m;
}

AgentDistances swap_distance_per_agent(const Profile& a, const Profile& b) {
  if (a.size_u() != b.size_u() || a.size_w() != b.size_w())
    throw Error(ErrorKind::UnknownAgent, "profiles are over different agent sets");
  AgentDistances out;
  for (int u = 0; u < a.size_u(); ++u) out.u.push_back(list_swap_distance(a.list_u(u), b.list_u(u)));
  for (int w = 0; w < a.size_w(); ++w) out.w.push_back(list_swap_distance(a.list_w(w), b.list_w(w)));
  return out;
}

SwapDistance swap_distance(const Profile& a, const Profile& b) {
  return swap_distance_per_agent(a, b).total();
}

std::vector<SwapOp> swap_sequence(const Profile& a, const Profile& b) {
  if (swap_distance(a, b).is_infinite())
    throw Error(ErrorKind::InvalidInput, "profiles differ in acceptable sets");
  std::vector<SwapOp> out;
  auto emit = [&](AgentId owner, std::span<const int> from, std::span<const int> to) {
    std::vector<int> cur(from.begin(), from.end());
    // Insertion sort toward the target order; each step is one adjacent swap.
    for (std::size_t k = 0; k < to.size(); ++k) {
      auto it = std::find(cur.begin() + static_cast<std::ptrdiff_t>(k), cur.end(), to[k]);
      for (auto pos = it - cur.begin(); pos > static_cast<std::ptrdiff_t>(k); --pos) {
        out.push_back({owner, cur[pos - 1], cur[pos]});
        std::swap(cur[pos - 1], cur[pos]);
      }
    }
  };
  for (int u = 0; u < a.size_u(); ++u) emit(AgentId::u(u), a.list_u(u), b.list_u(u));
  for (int w = 0; w < a.size_w(); ++w) emit(AgentId::w(w), a.list_w(w), b.list_w(w));
  return out;
}

// --- matchings and stability ------------------------------------------------

void check_matching(const Profile& p, const Matching& m) {
  if (m.size_u() != p.size_u() || m.size_w() != p.size_w())
    throw Error(ErrorKind::InvalidMatching, "matching and profile have different agent sets");
  for (auto [u, w] : m.pairs())
    if (!p.acceptable(u, w))
      throw Error(ErrorKind::InvalidMatching,
                  "pair {" + p.name(AgentId::u(u)) + ", " + p.name(AgentId::w(w)) + "} is not mutually acceptable");
}

int partner_rank(const Profile& p, const Matching& m, AgentId x) {
  const int partner = m.partner(x);
  if (partner == Matching::kNone) return static_cast<int>(p.list(x).size());
  return p.rank_of(x, partner);
}

bool is_blocking(const Profile& p, const Matching& m, int u, int w) {
  if (!p.acceptable(u, w) || m.contains(u, w)) return false;
  const int mu = m.partner_of_u(u);
  const int mw = m.partner_of_w(w);
  const bool uImproves = mu == Matching::kNone || p.rank_u(u, w) < p.rank_u(u, mu);
  const bool wImproves = mw == Matching::kNone || p.rank_w(w, u) < p.rank_w(w, mw);
  return uImproves && wImproves;
}

std::vector<BlockingPair> blocking_pairs(const Profile& p, const Matching& m) {
  check_matching(p, m);
  std::vector<BlockingPair> out;
  for (int u = 0; u < p.size_u(); ++u)
    for (int w : p.list_u(u))
      if (is_blocking(p, m, u, w)) out.push_back({u, w});
  std::sort(out.begin(), out.end());
  return out;
}

bool is_stable(const Profile& p, const Matching& m) {
  check_matching(p, m);
  for (int u = 0; u < p.size_u(); ++u)
    for (int w : p.list_u(u))
      if (is_blocking(p, m, u, w)) return false;
  return true;
}

std::int64_t egalitarian_cost(const Profile& p, const Matching& m) {
  check_matching(p, m);
  std::int64_t total = 0;
  for (int u = 0; u < p.size_u(); ++u) total += partner_rank(p, m, AgentId::u(u));
  for (int w = 0; w < p.size_w(); ++w) total += partner_rank(p, m, AgentId::w(w));
  return total;
}

bool is_perfect(const Profile& p, const Matching& m) {
  check_matching(p, m);
  for (int u = 0; u < p.size_u(); ++u)
    if (m.partner_of_u(u) == Matching::kNone) return false;
  for (int w = 0; w < p.size_w(); ++w)
    if (m.partner_of_w(w) == Matching::kNone) return false;
  return true;
}

}  // namespace robmatch
