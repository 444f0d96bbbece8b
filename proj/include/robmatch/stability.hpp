#pragma once

#include <vector>

#include "robmatch/profile.hpp"

namespace robmatch {

/// Deferred acceptance with side U proposing. Free agents propose in
/// ascending index order.
Matching u_optimal(const Profile& p);
/// Deferred acceptance with side W proposing.
Matching w_optimal(const Profile& p);

struct PartitionResult {
  std::vector<AgentId> matched;    // R
  std::vector<AgentId> unmatched;  // S
  int n_matched = 0;
  int n_unmatched = 0;

  bool is_matched(AgentId x) const;
};

/// Every stable matching matches the same agents, so one run suffices.
PartitionResult matched_partition(const Profile& p);

}  // namespace robmatch
