#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "robmatch/profile.hpp"

namespace robmatch {

/// Cyclic sequence (u_0,w_0),...,(u_{r-1},w_{r-1}); eliminating it moves
/// every u_i from w_i to w_{i+1}. Stored with the smallest u first.
struct Rotation {
  std::vector<std::pair<int, int>> pairs;

  int size() const { return static_cast<int>(pairs.size()); }
  int u_at(int i) const { return pairs[static_cast<std::size_t>(i)].first; }
  int w_at(int i) const { return pairs[static_cast<std::size_t>(i)].second; }
  /// w_{i+1}, cyclic.
  int w_next(int i) const { return pairs[static_cast<std::size_t>((i + 1) % size())].second; }
  /// u_{i-1}, cyclic.
  int u_prev(int i) const { return pairs[static_cast<std::size_t>((i + size() - 1) % size())].first; }

  void canonicalize();

  friend auto operator<=>(const Rotation&, const Rotation&) = default;
  friend bool operator==(const Rotation&, const Rotation&) = default;
};

/// First w after M(u) in u's list that prefers u to its partner; an
/// unmatched w prefers anyone acceptable. Throws NoSuccessorDefined when u
/// is unmatched.
std::optional<int> successor(const Profile& p, const Matching& m, int u);

/// All rotations exposed in a stable matching, sorted. Throws InvalidInput
/// when m is not stable.
std::vector<Rotation> exposed_rotations(const Profile& p, const Matching& m);

/// Throws InvalidInput when some (u_i, w_i) is missing from m.
Matching eliminate(const Matching& m, const Rotation& rho);

class RotationDigraph {
 public:
  static RotationDigraph build(const Profile& p);

  int size() const { return static_cast<int>(rotations_.size()); }
  const std::vector<Rotation>& rotations() const { return rotations_; }
  const Rotation& rotation(int i) const { return rotations_[static_cast<std::size_t>(i)]; }
  /// Transitively reduced precedence arcs (from, to), sorted. Index order
  /// is a topological order.
  const std::vector<std::pair<int, int>>& arcs() const { return arcs_; }
  const std::vector<int>& preds(int i) const { return preds_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& succs(int i) const { return succs_[static_cast<std::size_t>(i)]; }
  /// a precedes b (strictly).
  bool precedes(int a, int b) const {
    return reach_[static_cast<std::size_t>(a) * size() + b] != 0;
  }

  const Matching& u_optimal() const { return top_; }
  const Matching& w_optimal() const { return bottom_; }

  /// Rotation whose elimination creates the pair (u, w), or -1.
  int producer(int u, int w) const { return producer_[static_cast<std::size_t>(u) * nW_ + w]; }
  /// Rotation whose elimination breaks the pair (u, w), or -1.
  int consumer(int u, int w) const { return consumer_[static_cast<std::size_t>(u) * nW_ + w]; }

  bool is_closed(std::span<const int> subset) const;
  /// Throws NotClosed for a subset that is not predecessor-closed.
  Matching matching_of(std::span<const int> subset) const;
  /// Visits every closed subset once (members ascending).
  void for_each_closed_subset(const std::function<void(const std::vector<int>&)>& visit) const;
  std::vector<int> predecessor_closure(std::span<const int> seeds) const;

 private:
  int nU_ = 0;
  int nW_ = 0;
  std::vector<Rotation> rotations_;
  std::vector<std::pair<int, int>> arcs_;
  std::vector<std::vector<int>> preds_;
  std::vector<std::vector<int>> succs_;
  std::vector<char> reach_;
  std::vector<int> producer_;
  std::vector<int> consumer_;
  Matching top_;
  Matching bottom_;
};

/// Sorted.
std::vector<Matching> enumerate_stable_matchings(const Profile& p);

/// Pairs contained in at least one stable matching, sorted.
std::vector<std::pair<int, int>> stable_pairs(const Profile& p);

/// Change of egalitarian cost (ranks taken from `cost`) when each rotation
/// is eliminated.
std::vector<std::int64_t> rotation_weights(const Profile& cost, const RotationDigraph& g);

/// Minimum-weight closed subset containing `forced` and avoiding
/// `forbidden`; `extra` adds implications (a in S ⇒ b in S).
std::optional<std::vector<int>> min_weight_closure(const RotationDigraph& g,
                                                   const std::vector<std::int64_t>& weights,
                                                   const std::vector<int>& forced,
                                                   const std::vector<int>& forbidden,
                                                   const std::vector<std::pair<int, int>>& extra = {});

}  // namespace robmatch
