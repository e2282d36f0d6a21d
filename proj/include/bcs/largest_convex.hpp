#pragma once

#include <stdexcept>
#include <vector>

#include "bcs/geometry.hpp"
#include "bcs/solution.hpp"

namespace bcs {

// Maximum-cardinality subset in strictly convex position (the k = 1 case),
// by dynamic programming over convex chains: fix the canonically smallest
// member `a` of the subset, sort the points after `a` by angle around it,
// and grow chains a -> c_i -> c_j that always turn counter-clockwise.  A
// chain closes into a polygon when the final edge turns back to `a`;
// strictness at `a` itself then comes for free (collinear hull points would
// have had to appear as a zero-turn somewhere along the way).
//
// O(n^4) with table lookups; instances up to a few dozen points are instant.
inline Solution largest_convex_subset(const PointSet& ps) {
  const int n = ps.size();
  if (n < 1) throw std::invalid_argument("largest_convex_subset: empty point set");

  const OrientationTable orient(ps);
  const std::vector<int> order = canonical_order(ps);

  // Seed: any single point (n == 1) or the canonically first pair.
  std::vector<int> best_set;
  best_set.push_back(order[0]);
  if (n >= 2) best_set.push_back(order[1]);

  std::vector<int> cand;
  std::vector<std::vector<int>> len, parent;
  for (int ai = 0; ai < n; ++ai) {
    const int a = order[static_cast<std::size_t>(ai)];
    cand.assign(order.begin() + ai + 1, order.end());
    const int m = static_cast<int>(cand.size());
    if (m < 2) break;  // later anchors have even fewer points after them
    std::sort(cand.begin(), cand.end(), [&](int u, int v) {
      const int s = orient(a, u, v);
      if (s != 0) return s > 0;
      return canonical_less(ps[u], ps[v]);  // same ray: nearer point first
    });

    // len[i][j]: longest chain ending with edge cand[i] -> cand[j] (counting
    // the anchor), 0 if no valid chain uses that edge.
    len.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), 0));
    parent.assign(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(m), -1));
    for (int j = 1; j < m; ++j) {
      for (int i = 0; i < j; ++i) {
        int best = 0, from = -1;
        if (orient(a, cand[static_cast<std::size_t>(i)], cand[static_cast<std::size_t>(j)]) > 0) {
          best = 3;  // chain a -> c_i -> c_j
        }
        for (int h = 0; h < i; ++h) {
          const int via = len[static_cast<std::size_t>(h)][static_cast<std::size_t>(i)];
          if (via == 0 || via + 1 <= best) continue;
          if (orient(cand[static_cast<std::size_t>(h)], cand[static_cast<std::size_t>(i)],
                     cand[static_cast<std::size_t>(j)]) > 0) {
            best = via + 1;
            from = h;
          }
        }
        len[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = best;
        parent[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = from;
        if (best > static_cast<int>(best_set.size()) &&
            orient(cand[static_cast<std::size_t>(i)], cand[static_cast<std::size_t>(j)], a) > 0) {
          std::vector<int> set;
          int ci = i, cj = j;
          set.push_back(cand[static_cast<std::size_t>(cj)]);
          while (ci != -1) {
            set.push_back(cand[static_cast<std::size_t>(ci)]);
            const int prev = parent[static_cast<std::size_t>(ci)][static_cast<std::size_t>(cj)];
            cj = ci;
            ci = prev;
          }
          set.push_back(a);
          best_set = std::move(set);
        }
      }
    }
  }

  Solution sol;
  std::sort(best_set.begin(), best_set.end());
  sol.sets.push_back(std::move(best_set));
  sol.value = static_cast<int>(sol.sets[0].size());
  if (auto err = validate_solution(ps, 1, sol)) {
    throw std::logic_error("largest_convex_subset produced an invalid solution: " + *err);
  }
  return sol;
}

}  // namespace bcs
