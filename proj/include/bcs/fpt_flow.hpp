#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "bcs/budget.hpp"
#include "bcs/geometry.hpp"
#include "bcs/solution.hpp"

// Solver parameterized by the number of interior points (points that are not
// strict hull vertices).  For a target value q it enumerates how the interior
// points could be distributed over the k sets — each used group must be in
// convex position and no larger than q — and then asks a small bipartite
// supply network whether the hull points can top every set up to exactly q
// points.  Hull points are abundant and interchangeable in the sense that any
// subset of hull points alone is in convex position, which is what makes the
// flow step sound; whether a *specific* assignment stays convex together with
// a seeded group is re-validated afterwards, with an exhaustive per-
// configuration search as the fallback when the flow's particular matching
// happens to be a geometrically bad one.
//
// The optimum is then found by binary search on q.

namespace bcs {

enum class HalfplaneSide { Left, Right };

// One way of seating the interior points: `groups` are the used interior
// subsets (each destined to become one answer set), `sides` optionally pins
// hull extensions of a fully collinear group to one side of its line.
struct InteriorConfiguration {
  std::vector<std::vector<int>> groups;
  std::vector<std::optional<HalfplaneSide>> sides;
};

// source -> slot (capacity demand), slot -> hull point (capacity 1, arcs as
// listed), hull point -> sink (capacity 1).  Hull points are addressed by
// their position in the instance's hull list.
struct FlowNetwork {
  std::vector<int> demand;
  std::vector<std::vector<int>> arcs;
  int sinks = 0;
};

struct FlowAssignment {
  int value = 0;
  std::vector<std::vector<int>> assigned;  // per slot, ascending hull ids
};

struct FptStats {
  long long configurations = 0;       // interior configurations examined
  long long flow_full = 0;            // configurations whose flow met demand
  long long validation_failures = 0;  // flow assignments that were not jointly convex
  long long rescues = 0;              // recovered by the exhaustive fallback
};

// Shortest-augmenting-path max flow.  Arcs are walked in construction order,
// so the resulting assignment is fully deterministic.  Networks here have at
// most a few dozen nodes; asymptotics are beside the point.
inline FlowAssignment max_flow(const FlowNetwork& net) {
  const int slots = static_cast<int>(net.demand.size());
  const int nodes = 2 + slots + net.sinks;
  const int source = 0, sink = nodes - 1;
  auto slot_node = [&](int s) { return 1 + s; };
  auto hull_node = [&](int w) { return 1 + slots + w; };

  struct Edge {
    int to, cap, rev;
  };
  std::vector<std::vector<Edge>> g(static_cast<std::size_t>(nodes));
  auto add_edge = [&](int from, int to, int cap) {
    g[static_cast<std::size_t>(from)].push_back(
        Edge{to, cap, static_cast<int>(g[static_cast<std::size_t>(to)].size())});
    g[static_cast<std::size_t>(to)].push_back(
        Edge{from, 0, static_cast<int>(g[static_cast<std::size_t>(from)].size()) - 1});
  };
  for (int s = 0; s < slots; ++s) add_edge(source, slot_node(s), net.demand[static_cast<std::size_t>(s)]);
  for (int s = 0; s < slots; ++s) {
    for (int w : net.arcs[static_cast<std::size_t>(s)]) add_edge(slot_node(s), hull_node(w), 1);
  }
  for (int w = 0; w < net.sinks; ++w) add_edge(hull_node(w), sink, 1);

  int total = 0;
  std::vector<int> prev_node(static_cast<std::size_t>(nodes));
  std::vector<int> prev_edge(static_cast<std::size_t>(nodes));
  while (true) {
    std::fill(prev_node.begin(), prev_node.end(), -1);
    prev_node[static_cast<std::size_t>(source)] = source;
    std::queue<int> bfs;
    bfs.push(source);
    while (!bfs.empty() && prev_node[static_cast<std::size_t>(sink)] == -1) {
      const int u = bfs.front();
      bfs.pop();
      for (std::size_t e = 0; e < g[static_cast<std::size_t>(u)].size(); ++e) {
        const Edge& ed = g[static_cast<std::size_t>(u)][e];
        if (ed.cap > 0 && prev_node[static_cast<std::size_t>(ed.to)] == -1) {
          prev_node[static_cast<std::size_t>(ed.to)] = u;
          prev_edge[static_cast<std::size_t>(ed.to)] = static_cast<int>(e);
          bfs.push(ed.to);
        }
      }
    }
    if (prev_node[static_cast<std::size_t>(sink)] == -1) break;
    // Unit bottleneck is guaranteed past the source, so augment by 1.
    for (int v = sink; v != source; v = prev_node[static_cast<std::size_t>(v)]) {
      Edge& ed = g[static_cast<std::size_t>(prev_node[static_cast<std::size_t>(v)])]
                  [static_cast<std::size_t>(prev_edge[static_cast<std::size_t>(v)])];
      ed.cap -= 1;
      g[static_cast<std::size_t>(v)][static_cast<std::size_t>(ed.rev)].cap += 1;
    }
    ++total;
  }

  FlowAssignment result;
  result.value = total;
  result.assigned.assign(static_cast<std::size_t>(slots), {});
  for (int s = 0; s < slots; ++s) {
    for (const Edge& ed : g[static_cast<std::size_t>(slot_node(s))]) {
      const int w = ed.to - 1 - slots;
      if (w >= 0 && w < net.sinks && ed.cap == 0) {
        result.assigned[static_cast<std::size_t>(s)].push_back(w);
      }
    }
  }
  return result;
}

namespace detail {

inline bool all_collinear(const PointSet& ps, const std::vector<int>& subset) {
  if (subset.size() < 3) return subset.size() >= 2;
  for (std::size_t i = 2; i < subset.size(); ++i) {
    if (orientation_sign(ps[subset[0]], ps[subset[1]], ps[subset[i]]) != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

// May hull point `w` join the set seeded with `group`?  Requires
// group ∪ {w} in strictly convex position and, when the group is collinear
// and a side is pinned, w strictly on that side of the group's line
// (directed from the canonically smaller to the larger endpoint; Left is the
// counter-clockwise side).
inline bool compatible_hull_point(const PointSet& ps,
                                  const std::vector<int>& group,
                                  std::optional<HalfplaneSide> side, int w) {
  if (group.empty()) return true;
  std::vector<int> with = group;
  with.push_back(w);
  if (!is_convex_position(ps, with)) return false;
  if (side && group.size() >= 2 && detail::all_collinear(ps, group)) {
    int lo = group[0], hi = group[0];
    for (int g : group) {
      if (canonical_less(ps[g], ps[lo])) lo = g;
      if (canonical_less(ps[hi], ps[g])) hi = g;
    }
    const int s = orientation_sign(ps[lo], ps[hi], ps[w]);
    if (*side == HalfplaneSide::Left ? s <= 0 : s >= 0) return false;
  }
  return true;
}

namespace detail {

struct FptSearch {
  const PointSet& ps;
  int k, q;
  const std::vector<int>& interior;  // ascending original indices
  const std::vector<int>& hull;      // ascending original indices
  FptStats& stats;

  std::vector<std::vector<int>> groups;
  std::map<std::uint32_t, std::vector<char>> compat_cache;

  // convexity of group ∪ {hull[w]} for every w, keyed by interior mask
  const std::vector<char>& compat_row(const std::vector<int>& group) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < interior.size(); ++i) {
      for (int g : group) {
        if (interior[i] == g) mask |= 1u << i;
      }
    }
    auto it = compat_cache.find(mask);
    if (it != compat_cache.end()) return it->second;
    std::vector<char> row(hull.size(), 0);
    std::vector<int> with = group;
    with.push_back(-1);
    for (std::size_t w = 0; w < hull.size(); ++w) {
      with.back() = hull[w];
      row[w] = is_convex_position(ps, with) ? 1 : 0;
    }
    return compat_cache.emplace(mask, std::move(row)).first->second;
  }

  std::optional<Solution> try_configuration(const InteriorConfiguration& cfg) {
    ++stats.configurations;
    const int j = static_cast<int>(cfg.groups.size());
    const int hull_count = static_cast<int>(hull.size());
    FlowNetwork net;
    net.sinks = hull_count;
    net.demand.resize(static_cast<std::size_t>(k));
    net.arcs.assign(static_cast<std::size_t>(k), {});
    int total_demand = 0;
    for (int s = 0; s < k; ++s) {
      const int have = s < j ? static_cast<int>(cfg.groups[static_cast<std::size_t>(s)].size()) : 0;
      net.demand[static_cast<std::size_t>(s)] = q - have;
      total_demand += q - have;
    }
    if (total_demand > hull_count) return std::nullopt;
    for (int s = 0; s < k; ++s) {
      auto& arcs = net.arcs[static_cast<std::size_t>(s)];
      if (s >= j) {
        for (int w = 0; w < hull_count; ++w) arcs.push_back(w);
        continue;
      }
      const auto& group = cfg.groups[static_cast<std::size_t>(s)];
      const auto& row = compat_row(group);
      const auto side = cfg.sides[static_cast<std::size_t>(s)];
      const bool sided = side.has_value() && all_collinear(ps, group);
      int lo = -1, hi = -1;
      if (sided) {
        lo = hi = group[0];
        for (int g : group) {
          if (canonical_less(ps[g], ps[lo])) lo = g;
          if (canonical_less(ps[hi], ps[g])) hi = g;
        }
      }
      for (int w = 0; w < hull_count; ++w) {
        if (!row[static_cast<std::size_t>(w)]) continue;
        if (sided) {
          const int sg = orientation_sign(ps[lo], ps[hi], ps[hull[static_cast<std::size_t>(w)]]);
          if (*side == HalfplaneSide::Left ? sg <= 0 : sg >= 0) continue;
        }
        arcs.push_back(w);
      }
      if (static_cast<int>(arcs.size()) < net.demand[static_cast<std::size_t>(s)]) {
        return std::nullopt;  // flow could never fill this slot
      }
    }

    const FlowAssignment flow = max_flow(net);
    if (flow.value < total_demand) return std::nullopt;
    ++stats.flow_full;

    auto assemble = [&](const std::vector<std::vector<int>>& picked) {
      Solution sol;
      sol.sets.assign(static_cast<std::size_t>(k), {});
      for (int s = 0; s < k; ++s) {
        auto& set = sol.sets[static_cast<std::size_t>(s)];
        if (s < j) set = cfg.groups[static_cast<std::size_t>(s)];
        for (int w : picked[static_cast<std::size_t>(s)]) {
          set.push_back(hull[static_cast<std::size_t>(w)]);
        }
        std::sort(set.begin(), set.end());
      }
      sol.value = bottleneck_value(sol.sets);
      return sol;
    };

    bool joint_ok = true;
    for (int s = 0; s < j && joint_ok; ++s) {
      std::vector<int> set = cfg.groups[static_cast<std::size_t>(s)];
      for (int w : flow.assigned[static_cast<std::size_t>(s)]) {
        set.push_back(hull[static_cast<std::size_t>(w)]);
      }
      joint_ok = is_convex_position(ps, set);
    }
    if (joint_ok) return assemble(flow.assigned);

    ++stats.validation_failures;
    if (auto picked = exhaustive_assignment(cfg, net, total_demand)) {
      ++stats.rescues;
      return assemble(*picked);
    }
    return std::nullopt;
  }

  // Complete search over hull assignments for one configuration, used when
  // the flow's matching is not jointly convex.  Seeded slots pick their hull
  // points by ascending combination with incremental convex pruning; the
  // hull-only slots then take whatever is left (any hull subset works).
  std::optional<std::vector<std::vector<int>>> exhaustive_assignment(
      const InteriorConfiguration& cfg, const FlowNetwork& net, int total_demand) {
    const int j = static_cast<int>(cfg.groups.size());
    const int hull_count = static_cast<int>(hull.size());
    std::vector<char> taken(static_cast<std::size_t>(hull_count), 0);
    std::vector<std::vector<int>> picked(static_cast<std::size_t>(k));
    std::vector<int> current;

    auto fill_empties = [&]() {
      int w = 0;
      for (int s = j; s < k; ++s) {
        auto& p = picked[static_cast<std::size_t>(s)];
        p.clear();
        while (static_cast<int>(p.size()) < net.demand[static_cast<std::size_t>(s)]) {
          while (taken[static_cast<std::size_t>(w)]) ++w;
          p.push_back(w++);
        }
      }
    };

    auto dfs = [&](auto&& self, int slot, int next_w, int chosen) -> bool {
      if (slot == j) return true;
      const auto& group = cfg.groups[static_cast<std::size_t>(slot)];
      const int need = net.demand[static_cast<std::size_t>(slot)];
      if (chosen == need) {
        picked[static_cast<std::size_t>(slot)] = current;
        current.clear();
        if (self(self, slot + 1, 0, 0)) return true;
        current = picked[static_cast<std::size_t>(slot)];
        return false;
      }
      for (std::size_t ai = 0; ai < net.arcs[static_cast<std::size_t>(slot)].size(); ++ai) {
        const int w = net.arcs[static_cast<std::size_t>(slot)][ai];
        if (w < next_w || taken[static_cast<std::size_t>(w)]) continue;
        std::vector<int> set = group;
        for (int c : current) set.push_back(hull[static_cast<std::size_t>(c)]);
        set.push_back(hull[static_cast<std::size_t>(w)]);
        if (!is_convex_position(ps, set)) continue;
        taken[static_cast<std::size_t>(w)] = 1;
        current.push_back(w);
        if (self(self, slot, w + 1, chosen + 1)) return true;
        current.pop_back();
        taken[static_cast<std::size_t>(w)] = 0;
      }
      return false;
    };

    (void)total_demand;
    if (!dfs(dfs, 0, 0, 0)) return std::nullopt;
    fill_empties();
    return picked;
  }
};

}  // namespace detail

// Is there a family of k disjoint sets in convex position, every one of size
// >= q?  If so, returns one of exactly q per set (deterministic: the first
// hit in canonical enumeration order).  Interior-point count must be within
// budget.
inline std::optional<Solution> feasible_solution(const PointSet& ps, int k, int q,
                                                 const Budget& budget = Budget{},
                                                 FptStats* stats_out = nullptr) {
  const int n = ps.size();
  if (k < 1) throw std::invalid_argument("feasible_solution: k must be >= 1");
  if (q < 1) throw std::invalid_argument("feasible_solution: q must be >= 1");
  const std::vector<int> interior = interior_indices(ps);
  const int r = static_cast<int>(interior.size());
  if (r > budget.fpt_max_r) {
    throw BudgetExceeded("fpt solver: interior point count " + std::to_string(r) +
                         " exceeds budget (r<=" + std::to_string(budget.fpt_max_r) + ")");
  }
  if (static_cast<long long>(k) * q > n) return std::nullopt;

  std::vector<int> hull;
  {
    std::vector<char> is_interior(static_cast<std::size_t>(n), 0);
    for (int i : interior) is_interior[static_cast<std::size_t>(i)] = 1;
    for (int i = 0; i < n; ++i) {
      if (!is_interior[static_cast<std::size_t>(i)]) hull.push_back(i);
    }
  }

  FptStats local_stats;
  FptStats& stats = stats_out ? *stats_out : local_stats;
  detail::FptSearch search{ps, k, q, interior, hull, stats, {}, {}};

  const int max_groups = std::min(k, r);
  std::optional<Solution> found;

  // Enumerate side tags for each fully collinear group: the two pinned
  // half-planes first, then the unpinned case that lets hull points straddle
  // the line (needed for exactness; see the diamond {(0,0),(3,0)} +
  // {(1.5,±1)} shape, which no single half-plane produces).
  auto expand_sides = [&](auto&& self, InteriorConfiguration& cfg, std::size_t gi) -> bool {
    if (found) return true;
    if (gi == cfg.groups.size()) {
      if (auto sol = search.try_configuration(cfg)) {
        found = std::move(sol);
        return true;
      }
      return false;
    }
    if (detail::all_collinear(ps, cfg.groups[gi])) {
      for (auto side : {std::optional<HalfplaneSide>(HalfplaneSide::Left),
                        std::optional<HalfplaneSide>(HalfplaneSide::Right),
                        std::optional<HalfplaneSide>()}) {
        cfg.sides[gi] = side;
        if (self(self, cfg, gi + 1)) return true;
      }
    } else {
      cfg.sides[gi] = std::nullopt;
      if (self(self, cfg, gi + 1)) return true;
    }
    return false;
  };

  // Assign interior points (ascending) to: unused, one of the groups opened
  // so far, or a new group — groups are labeled by first use, so each
  // partition is seen once.
  auto assign = [&](auto&& self, int pos, int used) -> void {
    if (found) return;
    // Even assigning every remaining interior point somewhere cannot push
    // demand below the hull supply?  Then this subtree is hopeless.
    const int assigned_so_far = [&] {
      int c = 0;
      for (const auto& g : search.groups) c += static_cast<int>(g.size());
      return c;
    }();
    const int remaining = r - pos;
    if (static_cast<long long>(k) * q - assigned_so_far - remaining >
        static_cast<long long>(n - r)) {
      return;
    }
    if (pos == r) {
      InteriorConfiguration cfg;
      cfg.groups = search.groups;
      cfg.sides.assign(cfg.groups.size(), std::nullopt);
      expand_sides(expand_sides, cfg, 0);
      return;
    }
    self(self, pos + 1, used);  // unused
    if (found) return;
    const int limit = used < max_groups ? used + 1 : used;
    for (int g = 0; g < limit; ++g) {
      const bool opens = (g == used);
      if (opens) {
        search.groups.emplace_back();
      } else if (static_cast<int>(search.groups[static_cast<std::size_t>(g)].size()) >= q) {
        continue;  // this group is already at the target size
      }
      search.groups[static_cast<std::size_t>(g)].push_back(
          interior[static_cast<std::size_t>(pos)]);
      const bool ok =
          is_convex_position(ps, search.groups[static_cast<std::size_t>(g)]);
      if (ok) self(self, pos + 1, opens ? used + 1 : used);
      search.groups[static_cast<std::size_t>(g)].pop_back();
      if (search.groups[static_cast<std::size_t>(g)].empty()) search.groups.pop_back();
      if (found) return;
    }
  };

  assign(assign, 0, 0);
  if (found) {
    if (auto err = validate_solution(ps, k, *found)) {
      throw std::logic_error("fpt solver produced an invalid solution: " + *err);
    }
  }
  return found;
}

inline bool feasible(const PointSet& ps, int k, int q,
                     const Budget& budget = Budget{}, FptStats* stats = nullptr) {
  return feasible_solution(ps, k, q, budget, stats).has_value();
}

// Exact optimum by binary search on the target value.
inline Solution solve_fpt(const PointSet& ps, int k,
                          const Budget& budget = Budget{},
                          FptStats* stats = nullptr) {
  const int n = ps.size();
  if (k < 1) throw std::invalid_argument("solve_fpt: k must be >= 1");
  if (k > n) {
    Solution sol;
    sol.sets.assign(static_cast<std::size_t>(k), {});
    sol.infeasible_k = true;
    return sol;
  }
  int lo = 0, hi = n / k;
  std::optional<Solution> best;
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (auto sol = feasible_solution(ps, k, mid, budget, stats)) {
      best = std::move(sol);
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  if (!best) {
    // n >= k guarantees q = 1 is feasible, so this is unreachable unless the
    // enumeration is broken.
    throw std::logic_error("fpt solver found no solution despite k <= n");
  }
  return *best;
}

}  // namespace bcs
