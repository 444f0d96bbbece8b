#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "robmatch/profile.hpp"
#include "robmatch/rotations.hpp"

namespace robmatch {

inline constexpr int kUnmatched = -1;

/// (u*, w*, u, w): {u*, w} and {u, w*} lie in a common stable matching.
/// Agents that no stable matching covers give degenerate quadruples in
/// which the slot of their (absent) partner is kUnmatched: (u*, w*, u, -1)
/// when u* is never matched, (u*, w*, -1, w) when w* is never matched.
struct StableQuadruple {
  int u_star = 0;
  int w_star = 0;
  int u = 0;
  int w = 0;

  bool degenerate() const { return u == kUnmatched || w == kUnmatched; }
  friend auto operator<=>(const StableQuadruple&, const StableQuadruple&) = default;
};

struct SwapSet {
  std::vector<SwapOp> swaps;
  std::vector<int> shifted_u;  // new list of u*
  std::vector<int> shifted_w;  // new list of w*

  int size() const { return static_cast<int>(swaps.size()); }
};

/// Closed-form |SH(p, q)|.
int swap_set_size(const Profile& p, const StableQuadruple& q);
/// Throws InvalidInput when q is not well formed for p.
SwapSet swap_set(const Profile& p, const StableQuadruple& q);
Profile shifted_profile(const Profile& p, const StableQuadruple& q);

/// Whether the given pairs can all appear in one stable matching.
bool co_stable(const RotationDigraph& g, const std::vector<std::pair<int, int>>& pairs);
bool is_stable_quadruple(const Profile& p, const RotationDigraph& g, const StableQuadruple& q);

/// All stable quadruples (degenerate ones included), sorted, optionally
/// restricted to |SH| <= maxSwapSetSize.
std::vector<StableQuadruple> stable_quadruples(const Profile& p, const RotationDigraph& g,
                                               std::optional<int> maxSwapSetSize = std::nullopt);

/// Six rotation lookups per ordered pair, -1 when absent.
class RotationTables {
 public:
  static RotationTables build(const Profile& p, const RotationDigraph& g);

  int sigma1(int u, int w) const { return s1_[at_u(u, w)]; }
  int sigma2(int u, int w) const { return s2_[at_u(u, w)]; }
  int sigma3(int u, int w) const { return s3_[at_u(u, w)]; }
  int tau1(int w, int u) const { return t1_[at_u(u, w)]; }
  int tau2(int w, int u) const { return t2_[at_u(u, w)]; }
  int tau3(int w, int u) const { return t3_[at_u(u, w)]; }

 private:
  std::size_t at_u(int u, int w) const { return static_cast<std::size_t>(u) * nW_ + w; }
  int nW_ = 0;
  std::vector<int> s1_, s2_, s3_, t1_, t2_, t3_;
};

/// -1 when the rotation does not exist.
int pi_of(const RotationTables& t, const Profile& p, const StableQuadruple& q);
int rho_of(const RotationTables& t, const Profile& p, const StableQuadruple& q);

struct RobustnessCheck {
  bool robust = false;
  /// Set when m is unstable in p itself.
  std::optional<BlockingPair> blocking_in_p;
  /// Smallest violating quadruple, its profile, and the swaps leading there.
  std::optional<StableQuadruple> quadruple;
  std::optional<Profile> witness;
  std::vector<SwapOp> witness_swaps;
};

RobustnessCheck is_d_robust(const Profile& p, const Matching& m, int d);

struct RobustTrace {
  std::optional<Matching> matching;
  /// First quadruple with neither rotation, if that is why no matching exists.
  std::optional<StableQuadruple> unresolvable;
  std::vector<std::pair<int, int>> added_arcs;  // (rho, pi)
  std::vector<int> A;
  std::vector<int> D;
  std::vector<int> removed;  // D and everything it reaches
  std::vector<int> T;
};

RobustTrace find_d_robust_traced(const Profile& p, int d);
std::optional<Matching> find_d_robust(const Profile& p, int d);

enum class Objective { Any, Perfect, Egalitarian };

/// Perfect: a d-robust perfect matching. Egalitarian: a d-robust matching
/// of minimum egalitarian cost.
std::optional<Matching> find_d_robust_optimal(const Profile& p, int d, Objective objective);

struct MaxRobustness {
  int d = 0;
  Matching matching;
  /// Robust at every distance: no relevant swap set ever breaks it.
  bool unbounded = false;
};

/// Largest d <= cap admitting a d-robust matching. cap < 0 means the larger
/// side size.
std::optional<MaxRobustness> max_robustness(const Profile& p, int cap = -1);

}  // namespace robmatch
