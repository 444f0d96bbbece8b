#pragma once

#include <string>
#include <utility>
#include <vector>

#include "robmatch/profile.hpp"

namespace testing {

inline int U(const robmatch::Profile& p, const std::string& name) { return p.find(name).value().index; }
inline int W(const robmatch::Profile& p, const std::string& name) { return p.find(name).value().index; }

inline robmatch::Matching named(const robmatch::Profile& p,
                                const std::vector<std::pair<std::string, std::string>>& pairs) {
  robmatch::Matching m(p.size_u(), p.size_w());
  for (const auto& [u, w] : pairs) m.add(U(p, u), W(p, w));
  return m;
}

// Example 2 matching where a_i takes b_{i+1}.
inline robmatch::Matching example2_rotated(const robmatch::Profile& p, int n) {
  robmatch::Matching m(p.size_u(), p.size_w());
  for (int i = 0; i < n; ++i) m.add(i, (i + 1) % n);
  for (int i = 0; i < n; ++i) m.add(n + i, n + i);
  return m;
}

inline robmatch::Matching diagonal(int n) {
  robmatch::Matching m(n, n);
  for (int i = 0; i < n; ++i) m.add(i, i);
  return m;
}

}  // namespace testing
