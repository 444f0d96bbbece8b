#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "robmatch/error.hpp"

namespace robmatch {

enum class Side : std::uint8_t { U, W };

constexpr Side opposite(Side s) { return s == Side::U ? Side::W : Side::U; }

struct AgentId {
  Side side = Side::U;
  int index = 0;

  static constexpr AgentId u(int i) { return {Side::U, i}; }
  static constexpr AgentId w(int i) { return {Side::W, i}; }

  friend constexpr auto operator<=>(const AgentId&, const AgentId&) = default;
};

/// Swap distance between two lists or profiles. Lists over different
/// acceptable sets are infinitely far apart.
class SwapDistance {
 public:
  constexpr SwapDistance() = default;
  constexpr explicit SwapDistance(std::int64_t v) : value_(v) {}

  static constexpr SwapDistance infinite() {
    SwapDistance d;
    d.infinite_ = true;
    return d;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  /// Only meaningful when finite.
  constexpr std::int64_t value() const { return value_; }

  constexpr SwapDistance operator+(const SwapDistance& o) const {
    if (infinite_ || o.infinite_) return infinite();
    return SwapDistance(value_ + o.value_);
  }

  friend constexpr bool operator==(const SwapDistance& a, const SwapDistance& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend constexpr std::strong_ordering operator<=>(const SwapDistance& a,
                                                    const SwapDistance& b) {
    if (a.infinite_ || b.infinite_) {
      return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
    }
    return a.value_ <=> b.value_;
  }
  /// Comparison with a plain budget; infinite exceeds every budget.
  constexpr bool within(std::int64_t budget) const { return !infinite_ && value_ <= budget; }

  std::string to_string() const;

 private:
  std::int64_t value_ = 0;
  bool infinite_ = false;
};

/// Unvalidated input for building a profile. Entries are opposite-side
/// indices; names are optional and default to u1.., w1...
struct RawProfile {
  std::vector<std::string> namesU;
  std::vector<std::string> namesW;
  std::vector<std::vector<int>> listsU;
  std::vector<std::vector<int>> listsW;
};

struct ProfileIssue {
  ErrorKind kind;
  AgentId agent;
  std::optional<AgentId> other;
  std::string message;
};

enum class AcceptabilityPolicy { Reject, Prune };

/// Two sides of agents with strict, possibly incomplete preference lists.
/// Mutual acceptability holds for every constructed instance.
class Profile {
 public:
  Profile() = default;

  /// Throws Error with the first validation issue.
  static Profile from_lists(std::vector<std::vector<int>> listsU,
                            std::vector<std::vector<int>> listsW,
                            std::vector<std::string> namesU = {},
                            std::vector<std::string> namesW = {});

  int size_u() const { return static_cast<int>(listsU_.size()); }
  int size_w() const { return static_cast<int>(listsW_.size()); }
  int size(Side s) const { return s == Side::U ? size_u() : size_w(); }
  int agent_count() const { return size_u() + size_w(); }

  std::span<const int> list_u(int u) const { return listsU_[u]; }
  std::span<const int> list_w(int w) const { return listsW_[w]; }
  std::span<const int> list(AgentId x) const {
    return x.side == Side::U ? list_u(x.index) : list_w(x.index);
  }

  /// 0-based position of w in u's list; the list length if w is unacceptable.
  int rank_u(int u, int w) const { return rankU_[static_cast<std::size_t>(u) * size_w() + w]; }
  /// 0-based position of u in w's list; the list length if u is unacceptable.
  int rank_w(int w, int u) const { return rankW_[static_cast<std::size_t>(w) * size_u() + u]; }
  int rank_of(AgentId owner, int other) const {
    return owner.side == Side::U ? rank_u(owner.index, other) : rank_w(owner.index, other);
  }

  bool acceptable(int u, int w) const { return rank_u(u, w) < static_cast<int>(listsU_[u].size()); }

  const std::string& name(AgentId x) const {
    return x.side == Side::U ? namesU_[x.index] : namesW_[x.index];
  }
  const std::vector<std::string>& names(Side s) const { return s == Side::U ? namesU_ : namesW_; }
  std::optional<AgentId> find(const std::string& name) const;

  /// Copy with one agent's list reordered. The new list must be a
  /// permutation of the old one.
  Profile with_list(AgentId owner, std::vector<int> order) const;

  /// Hash of the list contents only (names ignored).
  std::size_t content_hash() const;

  friend bool operator==(const Profile& a, const Profile& b) {
    return a.listsU_ == b.listsU_ && a.listsW_ == b.listsW_;
  }

 private:
  friend struct ProfileBuilder;

  void build_ranks();

  std::vector<std::vector<int>> listsU_;
  std::vector<std::vector<int>> listsW_;
  std::vector<std::string> namesU_;
  std::vector<std::string> namesW_;
  std::vector<int> rankU_;
  std::vector<int> rankW_;
};

struct ValidationReport {
  std::optional<Profile> profile;
  std::vector<ProfileIssue> issues;    // fatal issues; profile absent when non-empty
  std::vector<ProfileIssue> warnings;  // pruned asymmetric entries under Prune
};

ValidationReport validate_profile(const RawProfile& raw,
                                  AcceptabilityPolicy policy = AcceptabilityPolicy::Reject);

/// A swap of two adjacent agents in the owner's list. The pair is unordered.
struct SwapOp {
  AgentId owner;
  int first = 0;
  int second = 0;

  friend bool operator==(const SwapOp& a, const SwapOp& b) {
    return a.owner == b.owner && ((a.first == b.first && a.second == b.second) ||
                                  (a.first == b.second && a.second == b.first));
  }
};

/// A set of disjoint cross-side pairs.
class Matching {
 public:
  static constexpr int kNone = -1;

  Matching() = default;
  Matching(int sizeU, int sizeW) : partnerU_(sizeU, kNone), partnerW_(sizeW, kNone) {}
  Matching(int sizeU, int sizeW, std::span<const std::pair<int, int>> pairs);

  int size_u() const { return static_cast<int>(partnerU_.size()); }
  int size_w() const { return static_cast<int>(partnerW_.size()); }

  /// Throws InvalidMatching when u or w is already matched.
  void add(int u, int w);
  void remove_u(int u);
  void remove_w(int w);

  int partner_of_u(int u) const { return partnerU_[u]; }
  int partner_of_w(int w) const { return partnerW_[w]; }
  int partner(AgentId x) const {
    return x.side == Side::U ? partnerU_[x.index] : partnerW_[x.index];
  }
  bool matched(AgentId x) const { return partner(x) != kNone; }
  bool contains(int u, int w) const { return partnerU_[u] == w; }

  /// Pairs sorted by u.
  std::vector<std::pair<int, int>> pairs() const;
  int pair_count() const;

  friend auto operator<=>(const Matching&, const Matching&) = default;
  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  std::vector<int> partnerU_;
  std::vector<int> partnerW_;
};

struct BlockingPair {
  int u = 0;
  int w = 0;
  friend auto operator<=>(const BlockingPair&, const BlockingPair&) = default;
};

// --- ranks, swaps, distances -----------------------------------------------

/// Rank of y in x's list. x and y must be on opposite sides.
int rank(const Profile& p, AgentId x, AgentId y);

Profile apply_swap(const Profile& p, const SwapOp& s);

SwapDistance list_swap_distance(std::span<const int> a, std::span<const int> b);

/// Per-agent swap distances, indexed by side and agent index.
struct AgentDistances {
  std::vector<SwapDistance> u;
  std::vector<SwapDistance> w;

  const SwapDistance& at(AgentId x) const { return x.side == Side::U ? u[x.index] : w[x.index]; }
  SwapDistance total() const;
  SwapDistance max() const;
};

AgentDistances swap_distance_per_agent(const Profile& a, const Profile& b);
SwapDistance swap_distance(const Profile& a, const Profile& b);

/// Adjacent swaps turning a into b (bubble order, minimal length). Requires
/// identical acceptable sets.
std::vector<SwapOp> swap_sequence(const Profile& a, const Profile& b);

// --- matchings and stability ------------------------------------------------

/// Throws InvalidMatching when sizes differ or a pair is not mutually acceptable.
void check_matching(const Profile& p, const Matching& m);

/// Partner's rank for a matched agent, the list length otherwise.
int partner_rank(const Profile& p, const Matching& m, AgentId x);

bool is_blocking(const Profile& p, const Matching& m, int u, int w);
std::vector<BlockingPair> blocking_pairs(const Profile& p, const Matching& m);
bool is_stable(const Profile& p, const Matching& m);
std::int64_t egalitarian_cost(const Profile& p, const Matching& m);
bool is_perfect(const Profile& p, const Matching& m);

}  // namespace robmatch
