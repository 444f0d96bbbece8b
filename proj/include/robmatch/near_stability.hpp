#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "robmatch/profile.hpp"
#include "robmatch/robustness.hpp"

namespace robmatch {

enum class NearMode { Global, Local };

/// Largest, over blocking pairs, of the cheaper side's rank improvement.
/// An unmatched agent cannot be talked out of a blocking pair by
/// reordering, so its side costs Infinite.
SwapDistance local_instability(const Profile& p, const Matching& m);
bool is_locally_d_nearly_stable(const Profile& p, const Matching& m, int dL);

/// Profile within per-agent distance dL in which m is stable. Throws
/// NotNearlyStable when none exists.
Profile witness_profile_local(const Profile& p, const Matching& m, int dL);

struct GlobalCost {
  SwapDistance cost;
  std::optional<Profile> witness;  // absent when the cost is Infinite
  std::vector<SwapOp> swaps;
};

/// Minimum total swap distance to a profile in which m is stable.
GlobalCost global_stabilization_cost(const Profile& p, const Matching& m);

struct NearSolution {
  Matching matching;
  Profile witness;
  std::int64_t cost = 0;  // egalitarian cost measured in the input profile
};

/// Breadth-first sweep of the swap ball of radius dG. Egalitarian requires
/// eta; costs are measured in p.
std::optional<NearSolution> solve_global_near(const Profile& p, int dG, Objective objective,
                                              std::optional<std::int64_t> eta = std::nullopt);
/// Smallest egalitarian cost over globally dG-nearly stable matchings.
std::optional<NearSolution> min_cost_global_near(const Profile& p, int dG);

/// Backtracking over U agents. Egalitarian requires eta.
std::optional<Matching> solve_local_near(const Profile& p, int dL, Objective objective,
                                         std::optional<std::int64_t> eta = std::nullopt);
std::optional<Matching> min_cost_local_near(const Profile& p, int dL);

/// Stable matching of apply_swap(p1, s) obtained from m1 through the
/// penalty-box procedure. Throws InvalidInput when m1 is not stable in p1.
Matching repair_after_swap(const Profile& p1, const Matching& m1, const SwapOp& s);

struct TradeoffPoint {
  int d = 0;
  /// Minimum egalitarian cost, or 1/0 for perfect; absent when nothing qualifies.
  std::optional<std::int64_t> value;
};

std::vector<TradeoffPoint> tradeoff_curve(const Profile& p, NearMode mode, int dMax, Objective objective);

}  // namespace robmatch
