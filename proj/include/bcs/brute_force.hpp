#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bcs/budget.hpp"
#include "bcs/geometry.hpp"
#include "bcs/solution.hpp"

namespace bcs {

namespace detail {

// Greatest achievable minimum if `remaining` further points could be dealt
// freely onto sets with the given current sizes.  Standard waterfill.
inline int waterfill_bound(std::vector<int> sizes, int remaining) {
  std::sort(sizes.begin(), sizes.end());
  long long rem = remaining;
  long long level = sizes[0];
  long long count = 1;
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    const long long gap = (sizes[i] - level) * count;
    if (gap <= rem) {
      rem -= gap;
      level = sizes[i];
      ++count;
    } else {
      level += rem / count;
      rem = 0;
      break;
    }
  }
  if (rem > 0) level += rem / count;
  return static_cast<int>(level);
}

// convex[mask] for every subset mask, computed as "strict hull vertex count
// equals popcount" with a monotone chain over table lookups.  Points are fed
// to the chain in canonical (x, then y) order, so no per-mask sorting.
inline std::vector<char> convexity_by_mask(const PointSet& ps,
                                           const OrientationTable& orient) {
  const int n = ps.size();
  const std::vector<int> canon = canonical_order(ps);
  std::vector<char> convex(static_cast<std::size_t>(1) << n, 1);
  std::vector<int> members, chain;
  members.reserve(static_cast<std::size_t>(n));
  chain.reserve(static_cast<std::size_t>(n) + 1);
  auto chain_len = [&](bool reverse) {
    chain.clear();
    const int m = static_cast<int>(members.size());
    for (int t = 0; t < m; ++t) {
      const int p = members[static_cast<std::size_t>(reverse ? m - 1 - t : t)];
      while (chain.size() >= 2 &&
             orient(chain[chain.size() - 2], chain.back(), p) <= 0) {
        chain.pop_back();
      }
      chain.push_back(p);
    }
    return static_cast<int>(chain.size());
  };
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) <= 2) continue;
    members.clear();
    for (int c : canon) {
      if (mask & (1u << c)) members.push_back(c);
    }
    const int vertices = chain_len(false) + chain_len(true) - 2;
    convex[mask] = (vertices == static_cast<int>(members.size())) ? 1 : 0;
  }
  return convex;
}

struct BruteSearch {
  const PointSet& ps;
  int n, k;
  const std::vector<char>* convex_mask;  // null when n is too big to tabulate
  std::vector<std::uint64_t> set_mask;
  std::vector<int> set_size;
  std::vector<std::vector<int>> set_members;  // only used on the slow path
  std::vector<std::int8_t> assign;            // 0 = unused, 1..k = set label
  int used = 0;
  int best_value = -1;
  std::vector<std::int8_t> best_assign;

  bool can_join(int point, int set) {
    if (convex_mask != nullptr) {
      return (*convex_mask)[set_mask[static_cast<std::size_t>(set)] |
                            (1ull << point)] != 0;
    }
    auto& members = set_members[static_cast<std::size_t>(set)];
    members.push_back(point);
    const bool ok = is_convex_position(ps, members);
    members.pop_back();
    return ok;
  }

  void place(int point, int set) {
    set_mask[static_cast<std::size_t>(set)] |= 1ull << point;
    ++set_size[static_cast<std::size_t>(set)];
    if (convex_mask == nullptr) {
      set_members[static_cast<std::size_t>(set)].push_back(point);
    }
    assign[static_cast<std::size_t>(point)] = static_cast<std::int8_t>(set + 1);
  }

  void remove(int point, int set) {
    set_mask[static_cast<std::size_t>(set)] &= ~(1ull << point);
    --set_size[static_cast<std::size_t>(set)];
    if (convex_mask == nullptr) {
      set_members[static_cast<std::size_t>(set)].pop_back();
    }
    assign[static_cast<std::size_t>(point)] = 0;
  }

  void dfs(int point) {
    if (point == n) {
      const int value =
          (used == k)
              ? *std::min_element(set_size.begin(), set_size.begin() + k)
              : 0;
      if (value > best_value) {
        best_value = value;
        best_assign = assign;
      }
      return;
    }
    std::vector<int> sizes(set_size.begin(), set_size.begin() + k);
    for (int s = used; s < k; ++s) sizes[static_cast<std::size_t>(s)] = 0;
    if (waterfill_bound(std::move(sizes), n - point) <= best_value) return;

    dfs(point + 1);  // leave unused; '0' branch first keeps results lex-least
    const int open_limit = (used < k) ? used + 1 : used;
    for (int s = 0; s < open_limit; ++s) {
      if (!can_join(point, s)) continue;
      const bool opens = (s == used);
      if (opens) ++used;
      place(point, s);
      dfs(point + 1);
      remove(point, s);
      if (opens) --used;
    }
  }
};

}  // namespace detail

// Exhaustive reference solver: tries every assignment of points to k sets
// (or none), with sets labeled in order of first use so relabelings are not
// re-explored.  Deterministic: returns the lexicographically smallest optimal
// assignment (branch order: unused, then existing sets, then a new one).
// Intended as the oracle other solvers are compared against; refuses
// instances beyond its budget.
inline Solution brute_force_bottleneck(const PointSet& ps, int k,
                                       const Budget& budget = Budget{}) {
  const int n = ps.size();
  if (k < 1) throw std::invalid_argument("brute_force_bottleneck: k must be >= 1");
  if (n > budget.oracle_max_n || k > budget.oracle_max_k) {
    throw BudgetExceeded("brute_force_bottleneck: instance (n=" +
                         std::to_string(n) + ", k=" + std::to_string(k) +
                         ") exceeds budget (n<=" +
                         std::to_string(budget.oracle_max_n) +
                         ", k<=" + std::to_string(budget.oracle_max_k) + ")");
  }
  if (k > n) {
    Solution sol;
    sol.sets.assign(static_cast<std::size_t>(k), {});
    sol.value = 0;
    sol.infeasible_k = true;
    return sol;
  }

  std::vector<char> table;
  const OrientationTable orient(ps);
  const bool tabulate = n <= 20;
  if (tabulate) table = detail::convexity_by_mask(ps, orient);

  detail::BruteSearch search{ps,
                             n,
                             k,
                             tabulate ? &table : nullptr,
                             std::vector<std::uint64_t>(static_cast<std::size_t>(k), 0),
                             std::vector<int>(static_cast<std::size_t>(k), 0),
                             std::vector<std::vector<int>>(static_cast<std::size_t>(k)),
                             std::vector<std::int8_t>(static_cast<std::size_t>(n), 0),
                             0,
                             -1,
                             {}};
  search.dfs(0);

  Solution sol;
  sol.sets.assign(static_cast<std::size_t>(k), {});
  for (int i = 0; i < n; ++i) {
    const int label = search.best_assign[static_cast<std::size_t>(i)];
    if (label > 0) sol.sets[static_cast<std::size_t>(label - 1)].push_back(i);
  }
  sol.value = search.best_value;
  if (auto err = validate_solution(ps, k, sol)) {
    throw std::logic_error("brute_force_bottleneck produced an invalid solution: " +
                           *err);
  }
  return sol;
}

}  // namespace bcs
