#include "robmatch/closure.hpp"

#include <algorithm>
#include <queue>

namespace robmatch {

MaxFlow::MaxFlow(int nodes) : g_(static_cast<std::size_t>(nodes)) {}

int MaxFlow::add_arc(int from, int to, std::int64_t cap) {
  g_[from].push_back({to, static_cast<int>(g_[to].size()), cap});
  g_[to].push_back({from, static_cast<int>(g_[from].size()) - 1, 0});
  return static_cast<int>(g_[from].size()) - 1;
}

bool MaxFlow::bfs(int s, int t) {
  level_.assign(g_.size(), -1);
  std::queue<int> q;
  level_[s] = 0;
  q.push(s);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (const auto& a : g_[v])
      if (a.cap > 0 && level_[a.to] < 0) {
        level_[a.to] = level_[v] + 1;
        q.push(a.to);
      }
  }
  return level_[t] >= 0;
}

std::int64_t MaxFlow::dfs(int v, int t, std::int64_t f) {
  if (v == t) return f;
  for (auto& i = it_[v]; i < g_[v].size(); ++i) {
    Arc& a = g_[v][i];
    if (a.cap <= 0 || level_[a.to] != level_[v] + 1) continue;
    const std::int64_t got = dfs(a.to, t, std::min(f, a.cap));
    if (got > 0) {
      a.cap -= got;
      g_[a.to][a.rev].cap += got;
      return got;
    }
  }
  return 0;
}

std::int64_t MaxFlow::run(int s, int t) {
  std::int64_t flow = 0;
  while (bfs(s, t)) {
    it_.assign(g_.size(), 0);
    while (std::int64_t f = dfs(s, t, kInf)) flow += f;
  }
  return flow;
}

std::vector<char> MaxFlow::source_side(int s) const {
  std::vector<char> seen(g_.size(), 0);
  std::vector<int> stack{s};
  seen[s] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (const auto& a : g_[v])
      if (a.cap > 0 && !seen[a.to]) {
        seen[a.to] = 1;
        stack.push_back(a.to);
      }
  }
  return seen;
}

std::optional<std::vector<int>> min_weight_closure(int n, const std::vector<std::int64_t>& weight,
                                                   const std::vector<std::pair<int, int>>& implies,
                                                   const std::vector<int>& forced,
                                                   const std::vector<int>& forbidden) {
  std::vector<std::vector<int>> out(n), in(n);
  for (auto [a, b] : implies) {
    out[a].push_back(b);
    in[b].push_back(a);
  }
  auto sweep = [n](const std::vector<std::vector<int>>& adj, const std::vector<int>& seeds) {
    std::vector<char> mark(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    for (int s : seeds)
      if (!mark[s]) {
        mark[s] = 1;
        stack.push_back(s);
      }
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int x : adj[v])
        if (!mark[x]) {
          mark[x] = 1;
          stack.push_back(x);
        }
    }
    return mark;
  };
  // Anything implying a forbidden node is itself excluded; anything a
  // forced node implies is included.
  const auto excluded = sweep(in, forbidden);
  const auto included = sweep(out, forced);
  for (int v = 0; v < n; ++v)
    if (excluded[v] && included[v]) return std::nullopt;

  const int s = n;
  const int t = n + 1;
  MaxFlow flow(n + 2);
  for (int v = 0; v < n; ++v) {
    if (excluded[v]) continue;
    if (included[v]) {
      flow.add_arc(s, v, MaxFlow::kInf);
      continue;
    }
    if (weight[v] < 0) flow.add_arc(s, v, -weight[v]);
    if (weight[v] > 0) flow.add_arc(v, t, weight[v]);
  }
  for (auto [a, b] : implies)
    if (!excluded[a] && !excluded[b]) flow.add_arc(a, b, MaxFlow::kInf);
  flow.run(s, t);
  const auto side = flow.source_side(s);
  std::vector<int> chosen;
  for (int v = 0; v < n; ++v)
    if (side[v] && !excluded[v]) chosen.push_back(v);
  return chosen;
}

}  // namespace robmatch
