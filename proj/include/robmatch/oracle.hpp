#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "robmatch/near_stability.hpp"
#include "robmatch/profile.hpp"
#include "robmatch/robustness.hpp"

namespace robmatch::oracle {

inline constexpr int kDefaultSideCap = 6;
inline constexpr std::size_t kDefaultBallCap = 5'000'000;

/// Every matching over mutually acceptable pairs. Throws TooLarge when a
/// side exceeds `cap`.
std::vector<Matching> enumerate_matchings(const Profile& p, int cap = kDefaultSideCap);
std::vector<Matching> enumerate_stable_bf(const Profile& p, int cap = kDefaultSideCap);

/// Calls visit(profile, total distance) for every profile within the ball:
/// total distance <= d (Global) or every list within d (Local). Stops when
/// visit returns true. Throws TooLarge past `cap` profiles.
void for_each_profile_within(const Profile& p, int d, NearMode mode,
                             const std::function<bool(const Profile&, std::int64_t)>& visit,
                             std::size_t cap = kDefaultBallCap);
std::vector<Profile> profiles_within(const Profile& p, int d, NearMode mode,
                                     std::size_t cap = 200'000);

bool brute_is_d_robust(const Profile& p, const Matching& m, int d);
/// Smallest distance to a profile where m is stable, if at most maxRadius.
std::optional<std::int64_t> brute_global_cost(const Profile& p, const Matching& m, int maxRadius = 3);
/// Whether some profile in the ball makes m stable.
bool brute_nearly_stable(const Profile& p, const Matching& m, int budget, NearMode mode);

struct BruteNear {
  Matching matching;
  Profile witness;
};

/// First matching (enumeration order) that meets the objective and is
/// stable somewhere in the ball.
std::optional<BruteNear> brute_solve_near(const Profile& p, int budget, NearMode mode, Objective objective,
                                          std::optional<std::int64_t> eta = std::nullopt);
/// Smallest egalitarian cost among nearly stable matchings.
std::optional<std::int64_t> brute_min_cost_near(const Profile& p, int budget, NearMode mode);

}  // namespace robmatch::oracle
