#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "bcs/geometry.hpp"

namespace bcs {

// A candidate answer: k pairwise-disjoint subsets in strict convex position.
// value is the size of the smallest subset.  Points not in any set were left
// unused on purpose — using fewer points can never hurt the bottleneck.
// infeasible_k marks the k > n case, where no valid family of k non-empty
// sets exists; such solutions carry k empty sets and value 0.
struct Solution {
  std::vector<std::vector<int>> sets;
  int value = 0;
  bool infeasible_k = false;
};

inline int bottleneck_value(const std::vector<std::vector<int>>& sets) {
  if (sets.empty()) return 0;
  std::size_t smallest = sets.front().size();
  for (const auto& s : sets) smallest = std::min(smallest, s.size());
  return static_cast<int>(smallest);
}

// Sets sorted internally and by first element, for stable comparison and
// output.  Does not change validity or value.
inline void normalize_solution(Solution& sol) {
  for (auto& s : sol.sets) std::sort(s.begin(), s.end());
  std::sort(sol.sets.begin(), sol.sets.end());
}

// Independent check of everything a valid answer must satisfy.  Returns
// nullopt if valid, otherwise a short description naming the first violated
// constraint.  Every solver's output is run through this before it is
// returned to a caller.
inline std::optional<std::string> validate_solution(const PointSet& ps, int k,
                                                    const Solution& sol) {
  if (static_cast<int>(sol.sets.size()) != k) {
    return "set count: expected " + std::to_string(k) + ", got " +
           std::to_string(sol.sets.size());
  }
  std::vector<char> used(static_cast<std::size_t>(ps.size()), 0);
  for (std::size_t si = 0; si < sol.sets.size(); ++si) {
    for (int idx : sol.sets[si]) {
      if (idx < 0 || idx >= ps.size()) {
        return "index range: set " + std::to_string(si) + " contains " +
               std::to_string(idx);
      }
      if (used[static_cast<std::size_t>(idx)]) {
        return "disjointness: point " + std::to_string(idx) +
               " appears in more than one set";
      }
      used[static_cast<std::size_t>(idx)] = 1;
    }
  }
  for (std::size_t si = 0; si < sol.sets.size(); ++si) {
    if (!is_convex_position(ps, sol.sets[si])) {
      return "convexity: set " + std::to_string(si) +
             " is not in strictly convex position";
    }
  }
  if (sol.value != bottleneck_value(sol.sets)) {
    return "value: reported " + std::to_string(sol.value) +
           ", actual minimum set size " +
           std::to_string(bottleneck_value(sol.sets));
  }
  return std::nullopt;
}

}  // namespace bcs
