#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace robmatch {

/// Dinic max-flow on an explicit arc list.
class MaxFlow {
 public:
  static constexpr std::int64_t kInf = std::int64_t{1} << 60;

  explicit MaxFlow(int nodes);

  int add_arc(int from, int to, std::int64_t cap);
  std::int64_t run(int source, int sink);
  /// Nodes reachable from the source in the residual graph after run().
  std::vector<char> source_side(int source) const;

 private:
  struct Arc {
    int to;
    int rev;
    std::int64_t cap;
  };
  bool bfs(int s, int t);
  std::int64_t dfs(int v, int t, std::int64_t f);

  std::vector<std::vector<Arc>> g_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

/// Minimum-weight subset S of {0..n-1} such that a in S implies b in S for
/// every (a, b) in `implies`, forced ⊆ S and S ∩ forbidden = ∅. Among optima
/// the inclusion-minimal one is returned. Absent when infeasible.
std::optional<std::vector<int>> min_weight_closure(int n, const std::vector<std::int64_t>& weight,
                                                   const std::vector<std::pair<int, int>>& implies,
                                                   const std::vector<int>& forced,
                                                   const std::vector<int>& forbidden);

}  // namespace robmatch
