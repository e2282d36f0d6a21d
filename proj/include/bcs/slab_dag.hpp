#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bcs/budget.hpp"
#include "bcs/geometry.hpp"
#include "bcs/solution.hpp"

// Exact bottleneck solver via a left-to-right sweep.  Points are relabeled
// 0..n-1 in canonical (x, then y) order; the gaps between consecutive points
// are vertical slabs.  A partial answer inside one slab is described by the
// polygons currently "open" there, each bounded by a top and a bottom chain.
// Sweeping over the points left to right, each point either extends a chain
// of an open polygon, closes a polygon (joining both chains), opens a new
// polygon, or is skipped.  Chains built this way can only close into
// strictly convex polygons, so the sweep explores exactly the subsets in
// convex position with >= 3 vertices; answers of value <= 2 are covered by a
// balanced fallback partition.
//
// The public per-slab inspection API (slab_segments, successors) describes a
// state by the segments with which each open polygon crosses the current
// slab, i.e. including the committed right endpoints of the chains' pending
// edges.  The solver itself runs on a much coarser but exact quotient of
// that state space.  Appending p to a chain only needs a strict-turn check
// against the chain's last completed edge, and closing needs three strict
// turns through the closing point; together these checks are equivalent to
// strict convexity of the finished polygon (they force the top chain to be
// strictly concave and the bottom chain strictly convex as functions of
// sheared x, so the chains never meet between their shared endpoints and
// the cycle is simple with every turn strict).  Hence a chain's entire
// influence on the future is (a) the set of remaining points its last edge
// still admits and (b) its last vertex, which seeds the next edge and the
// closing turn.  The solver therefore stores per open polygon just the two
// last vertices and two admissible-point bitmasks (precomputed per edge,
// re-restricted to the remaining points each step), merging every history
// that behaves identically from now on.  Committed-lookahead multiplicity,
// left-endpoint multiplicity and spent mask bits all disappear, and two
// sharp prunes come for free: a polygon whose masks have empty intersection
// can never close, and one with count + |union of masks| < v can never
// reach v vertices.
//
// The optimum is found by scanning candidate bottleneck values v from
// floor(n/k) downward and running the sweep as a feasibility test per v:
// every close must complete at least v vertices, vertex counts saturate at
// v, and a closed polygon needs no further description, so "completed sets"
// collapse into the derived counter opened - |active|.  A supply bound
// (remaining points must cover every open polygon's deficit plus v points
// per never-opened polygon) and per-signature Pareto pruning on the count
// profiles keep the state sets small.

namespace bcs {

struct Segment {
  int l = -1;
  int r = -1;
  auto operator<=>(const Segment&) const = default;
};

// One open polygon in the public slab description: the segments with which
// its top and bottom chains cross the current slab, and how many vertices it
// has so far (saturated at the context's target).
struct ActivePolygon {
  Segment top;
  Segment bottom;
  int count = 0;
  auto operator<=>(const ActivePolygon&) const = default;
};

struct SlabState {
  std::vector<ActivePolygon> active;  // sorted by (top, bottom)
  int opened = 0;                     // polygons ever opened
  bool operator==(const SlabState&) const = default;

  int closed() const { return opened - static_cast<int>(active.size()); }
};

struct Transition {
  enum class Kind { Turn, Close, Open, Skip };
  Kind kind = Kind::Skip;
  int poly = -1;           // index into the predecessor state's active list
  bool top_chain = false;  // Turn only: which chain was extended
  Segment first;           // public successors only: Turn replacement / Open top
  Segment second;          // public successors only: Open bottom
};

// Geometry shared by every state expansion of one instance: points in
// canonical order addressed by position, orientation signs by table lookup.
// `target` is the bottleneck value v under test: vertex counts saturate at v
// and polygons may only close once they reach it (v = 3 therefore means
// "close anything", since a polygon cannot close before its third vertex).
class SlabContext {
 public:
  SlabContext(const PointSet& ps, int k, int target)
      : n_(ps.size()), k_(k), target_(std::max(target, 3)),
        order_(canonical_order(ps)), table_(ps) {}

  int n() const { return n_; }
  int k() const { return k_; }
  int target() const { return target_; }
  int original_index(int position) const {
    return order_[static_cast<std::size_t>(position)];
  }
  // Orientation sign of three points given by canonical position.
  int orient(int a, int b, int c) const {
    return table_(order_[static_cast<std::size_t>(a)],
                  order_[static_cast<std::size_t>(b)],
                  order_[static_cast<std::size_t>(c)]);
  }

 private:
  int n_, k_, target_;
  std::vector<int> order_;
  OrientationTable table_;
};

// All point-pair segments alive in slab i (between canonical positions i and
// i+1): left endpoint <= i, right endpoint > i.  Ordered by (l, r).
inline std::vector<Segment> slab_segments(const PointSet& ps, int slab) {
  const int n = ps.size();
  if (slab < 0 || slab >= n - 1) {
    throw std::invalid_argument("slab_segments: slab index out of range");
  }
  std::vector<Segment> segs;
  for (int l = 0; l <= slab; ++l) {
    for (int r = slab + 1; r < n; ++r) segs.push_back(Segment{l, r});
  }
  return segs;
}

namespace detail {

inline void sort_active(std::vector<ActivePolygon>& active) {
  std::sort(active.begin(), active.end(),
            [](const ActivePolygon& a, const ActivePolygon& b) {
              if (a.top != b.top) return a.top < b.top;
              return a.bottom < b.bottom;
            });
}

}  // namespace detail

// Every successor of `state` (in the committed-segment description) when the
// sweep reaches canonical position p, paired with the transition that
// produces it.  The point must serve the unique polygon whose segments end
// at it, if any: extending a chain checks the strict turn and that p is
// strictly on the polygon's side of the partner segment; closing requires
// both segments to end at p and the polygon to have reached the target
// count.  Otherwise p may be skipped or open a new polygon via a
// non-collinear pair of committed later endpoints.  Deterministic order:
// skip or close first, then chain extensions / openings by ascending
// endpoint.
inline std::vector<std::pair<SlabState, Transition>> successors(
    const SlabState& state, const SlabContext& ctx, int p) {
  std::vector<std::pair<SlabState, Transition>> out;
  const int n = ctx.n();
  const int v = ctx.target();

  int incident = -1;
  int incident_polys = 0;
  bool top_ends = false, bottom_ends = false;
  for (std::size_t i = 0; i < state.active.size(); ++i) {
    const bool te = state.active[i].top.r == p;
    const bool be = state.active[i].bottom.r == p;
    if (te || be) {
      ++incident_polys;
      incident = static_cast<int>(i);
      top_ends = te;
      bottom_ends = be;
    }
  }
  // Two different polygons expecting the same point can never both be
  // served; such a state has no future.
  if (incident_polys > 1) return out;

  // True if some active segment (other than those of polygon `exclude`)
  // already ends at position r; a second segment ending there would create
  // exactly the dead end above, so such extensions are not generated.
  auto claimed = [&](int r, int exclude) {
    for (std::size_t i = 0; i < state.active.size(); ++i) {
      if (static_cast<int>(i) == exclude) continue;
      if (state.active[i].top.r == r || state.active[i].bottom.r == r) return true;
    }
    return false;
  };

  if (incident_polys == 0) {
    out.push_back({state, Transition{Transition::Kind::Skip, -1, false, {}, {}}});
    if (state.opened < ctx.k()) {
      for (int a = p + 1; a < n; ++a) {
        if (claimed(a, -1)) continue;
        for (int b = a + 1; b < n; ++b) {
          if (claimed(b, -1)) continue;
          const int s = ctx.orient(p, a, b);
          if (s == 0) continue;  // collinear opening spoils strictness
          const Segment sa{p, a}, sb{p, b};
          const Segment top = (s > 0) ? sb : sa;     // positive: b above ray p->a
          const Segment bottom = (s > 0) ? sa : sb;
          SlabState succ = state;
          succ.active.push_back(ActivePolygon{top, bottom, 1});
          detail::sort_active(succ.active);
          succ.opened += 1;
          out.push_back({std::move(succ),
                         Transition{Transition::Kind::Open, -1, false, top, bottom}});
        }
      }
    }
    return out;
  }

  const ActivePolygon& poly = state.active[static_cast<std::size_t>(incident)];
  if (top_ends && bottom_ends) {
    if (poly.count + 1 >= v) {  // closing below the target value is pointless
      SlabState succ = state;
      succ.active.erase(succ.active.begin() + incident);
      out.push_back({std::move(succ),
                     Transition{Transition::Kind::Close, incident, false, {}, {}}});
    }
    return out;
  }

  if (top_ends) {
    // Extend the top chain: the turn at p must bend clockwise (inward for a
    // top boundary) and p must sit strictly above the bottom segment.
    if (ctx.orient(poly.bottom.l, poly.bottom.r, p) > 0) {
      for (int a = p + 1; a < n; ++a) {
        if (claimed(a, incident)) continue;
        if (ctx.orient(poly.top.l, p, a) >= 0) continue;
        SlabState succ = state;
        ActivePolygon& np = succ.active[static_cast<std::size_t>(incident)];
        np.top = Segment{p, a};
        np.count = std::min(np.count + 1, v);
        detail::sort_active(succ.active);
        out.push_back({std::move(succ),
                       Transition{Transition::Kind::Turn, incident, true,
                                  Segment{p, a}, {}}});
      }
    }
  } else {
    // Mirror image for the bottom chain: counter-clockwise turn, p strictly
    // below the top segment.
    if (ctx.orient(poly.top.l, poly.top.r, p) < 0) {
      for (int a = p + 1; a < n; ++a) {
        if (claimed(a, incident)) continue;
        if (ctx.orient(poly.bottom.l, p, a) <= 0) continue;
        SlabState succ = state;
        ActivePolygon& np = succ.active[static_cast<std::size_t>(incident)];
        np.bottom = Segment{p, a};
        np.count = std::min(np.count + 1, v);
        detail::sort_active(succ.active);
        out.push_back({std::move(succ),
                       Transition{Transition::Kind::Turn, incident, false,
                                  Segment{p, a}, {}}});
      }
    }
  }
  return out;
}

struct SlabOptions {
  // Highest bottleneck value the scan starts from (0: floor(n/k)).  Capping
  // it below the true optimum turns the solver into "find any solution with
  // all sets >= max_target", which solve_auto uses when floor(n/k) = 3.
  int max_target = 0;
  bool enumerate_all = false;
  std::size_t enumerate_limit = 1000;
};

namespace detail {

// 128-bit point-set mask; the solver addresses points by canonical position.
struct Mask {
  std::uint64_t lo = 0, hi = 0;

  static Mask below(int p) {  // bits 0 .. p-1
    Mask m;
    if (p < 64) {
      m.lo = (p == 0) ? 0 : ~std::uint64_t{0} >> (64 - p);
      m.hi = 0;
    } else {
      m.lo = ~std::uint64_t{0};
      m.hi = (p == 64) ? 0 : ~std::uint64_t{0} >> (128 - p);
    }
    return m;
  }
  static Mask range(int lo_excl, int hi_excl) {  // bits lo_excl+1 .. hi_excl-1
    Mask lo_mask = below(lo_excl + 1);
    Mask m = below(hi_excl);
    m.lo &= ~lo_mask.lo;
    m.hi &= ~lo_mask.hi;
    return m;
  }
  void set(int i) { (i < 64 ? lo : hi) |= std::uint64_t{1} << (i & 63); }
  bool test(int i) const { return ((i < 64 ? lo : hi) >> (i & 63)) & 1; }
  Mask operator&(const Mask& o) const { return Mask{lo & o.lo, hi & o.hi}; }
  Mask operator|(const Mask& o) const { return Mask{lo | o.lo, hi | o.hi}; }
  Mask& operator&=(const Mask& o) { lo &= o.lo; hi &= o.hi; return *this; }
  bool none() const { return lo == 0 && hi == 0; }
  int count() const { return std::popcount(lo) + std::popcount(hi); }
  bool operator==(const Mask&) const = default;
};

// Per-edge admissible futures: for a < b, top(a, b) holds every q > b that a
// top chain with last edge (a, b) may still accept (strict clockwise turn),
// bottom(a, b) the counter-clockwise mirror.
class EdgeMasks {
 public:
  explicit EdgeMasks(const SlabContext& ctx) : n_(ctx.n()) {
    top_.resize(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
    bot_.resize(top_.size());
    for (int a = 0; a < n_; ++a) {
      for (int b = a + 1; b < n_; ++b) {
        Mask t, bo;
        for (int q = b + 1; q < n_; ++q) {
          const int s = ctx.orient(a, b, q);
          if (s < 0) t.set(q);
          if (s > 0) bo.set(q);
        }
        top_[index(a, b)] = t;
        bot_[index(a, b)] = bo;
      }
    }
  }
  const Mask& top(int a, int b) const { return top_[index(a, b)]; }
  const Mask& bottom(int a, int b) const { return bot_[index(a, b)]; }

 private:
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) +
           static_cast<std::size_t>(b);
  }
  int n_;
  std::vector<Mask> top_, bot_;
};

// One open polygon in the solver's quotient state.  `t_last` / `b_last` are
// the last vertices of the chains (the shared first vertex while a chain has
// none of its own), `t_adm` / `b_adm` the admissible future points of the
// chains' last edges, restricted to points after the sweep position.  A
// freshly opened polygon admits everything.  Last top vertices are unique
// across polygons (each point belongs to at most one), so sorting by
// `t_last` keeps the list canonical.
struct QPoly {
  std::uint8_t t_last = 0, b_last = 0, count = 0;
  Mask t_adm, b_adm;
  bool operator==(const QPoly&) const = default;
};

struct QState {
  std::vector<QPoly> active;  // sorted by t_last
  int opened = 0;
  bool operator==(const QState&) const = default;
};

inline void sort_qstate(std::vector<QPoly>& active) {
  std::sort(active.begin(), active.end(),
            [](const QPoly& a, const QPoly& b) { return a.t_last < b.t_last; });
}

struct QStored {
  QState state;
  std::vector<std::pair<int, Transition>> preds;  // ids in previous layer
  bool alive = true;
};

inline void append_mask(std::string& s, const Mask& m, int mask_bytes) {
  char buf[16];
  std::memcpy(buf, &m.lo, 8);
  std::memcpy(buf + 8, &m.hi, 8);
  s.append(buf, static_cast<std::size_t>(mask_bytes));
}

// Identity of the dominance bucket: opened plus each polygon's last
// vertices.  States in one bucket differ only in counts and admissible
// masks, which the dominance order compares pointwise.
inline std::string signature_key(const QState& st) {
  std::string key;
  key.reserve(1 + st.active.size() * 2);
  key.push_back(static_cast<char>(st.opened));
  for (const auto& poly : st.active) {
    key.push_back(static_cast<char>(poly.t_last));
    key.push_back(static_cast<char>(poly.b_last));
  }
  return key;
}

// Exact state identity (enumeration mode).
inline std::string full_key(const QState& st, int mask_bytes) {
  std::string key = signature_key(st);
  for (const auto& poly : st.active) {
    key.push_back(static_cast<char>(poly.count));
    append_mask(key, poly.t_adm, mask_bytes);
    append_mask(key, poly.b_adm, mask_bytes);
  }
  return key;
}

// Minimum number of future points any completion of `st` must still absorb:
// each open polygon needs to reach v vertices and close (>= 1 point), each
// never-opened polygon needs v fresh vertices.
inline int supply_needed(const QState& st, int k, int v) {
  int need = (k - st.opened) * v;
  for (const auto& poly : st.active) {
    need += std::max(v - static_cast<int>(poly.count), 1);
  }
  return need;
}

inline bool mask_superset(const Mask& a, const Mask& b) {  // b subset of a
  return (a.lo & b.lo) == b.lo && (a.hi & b.hi) == b.hi;
}

// Dominance order on states with identical signatures: a state is at least
// as good as another if every aligned polygon has at least the count and
// admits at least the future points on both chains; any completion of the
// worse state then works verbatim for the better one.  Returns +1 if a >= b,
// -1 if b >= a with a != b, 2 if equal, 0 if incomparable.
inline int compare_profiles(const QState& a, const QState& b) {
  bool a_ge = true, b_ge = true;
  for (std::size_t i = 0; i < a.active.size(); ++i) {
    const QPoly& x = a.active[i];
    const QPoly& y = b.active[i];
    if (x.count < y.count || !mask_superset(x.t_adm, y.t_adm) ||
        !mask_superset(x.b_adm, y.b_adm)) {
      a_ge = false;
    }
    if (y.count < x.count || !mask_superset(y.t_adm, x.t_adm) ||
        !mask_superset(y.b_adm, x.b_adm)) {
      b_ge = false;
    }
    if (!a_ge && !b_ge) return 0;
  }
  if (a_ge && b_ge) return 2;
  if (a_ge) return 1;
  if (b_ge) return -1;
  return 0;
}

// Solver-side successor generation on the quotient state.  Every successor's
// masks are restricted to points after p, and states containing a polygon
// that can no longer close (empty mask intersection) or can no longer reach
// v vertices (count + |mask union| < v) are suppressed.
inline void q_successors(const QState& state, const SlabContext& ctx,
                         const EdgeMasks& em, int p,
                         std::vector<std::pair<QState, Transition>>& out) {
  out.clear();
  const int v = ctx.target();
  const Mask above = Mask::range(p, ctx.n());  // remaining points p+1 .. n-1

  // Restrict masks to the points after p and append unless some polygon is
  // now doomed.
  auto finish = [&](QState&& st, const Transition& tr) {
    for (auto& poly : st.active) {
      poly.t_adm &= above;
      poly.b_adm &= above;
      if ((poly.t_adm & poly.b_adm).none()) return;  // can never close
      if (static_cast<int>(poly.count) + (poly.t_adm | poly.b_adm).count() < v) {
        return;  // can never reach v vertices
      }
    }
    out.push_back({std::move(st), tr});
  };

  finish(QState{state}, Transition{Transition::Kind::Skip, -1, false, {}, {}});

  if (state.opened < ctx.k()) {
    QState succ = state;
    QPoly fresh;
    fresh.t_last = fresh.b_last = static_cast<std::uint8_t>(p);
    fresh.count = 1;
    fresh.t_adm = fresh.b_adm = above;
    succ.active.push_back(fresh);
    sort_qstate(succ.active);
    succ.opened += 1;
    finish(std::move(succ), Transition{Transition::Kind::Open, -1, false, {}, {}});
  }

  for (int i = 0; i < static_cast<int>(state.active.size()); ++i) {
    const QPoly& poly = state.active[static_cast<std::size_t>(i)];
    const bool t_ok = poly.t_adm.test(p);
    const bool b_ok = poly.b_adm.test(p);
    if (t_ok) {  // append p to the top chain
      QState succ = state;
      QPoly& np = succ.active[static_cast<std::size_t>(i)];
      np.t_adm = em.top(np.t_last, p);
      np.t_last = static_cast<std::uint8_t>(p);
      np.count = static_cast<std::uint8_t>(std::min<int>(np.count + 1, v));
      sort_qstate(succ.active);
      finish(std::move(succ), Transition{Transition::Kind::Turn, i, true, {}, {}});
    }
    if (b_ok) {  // append p to the bottom chain
      QState succ = state;
      QPoly& np = succ.active[static_cast<std::size_t>(i)];
      np.b_adm = em.bottom(np.b_last, p);
      np.b_last = static_cast<std::uint8_t>(p);
      np.count = static_cast<std::uint8_t>(std::min<int>(np.count + 1, v));
      sort_qstate(succ.active);
      finish(std::move(succ), Transition{Transition::Kind::Turn, i, false, {}, {}});
    }
    // Close at p: both chains must admit p, the turn through p must be
    // strict, and the polygon must have reached the target.
    if (t_ok && b_ok && static_cast<int>(poly.count) + 1 >= v &&
        ctx.orient(poly.t_last, p, poly.b_last) < 0) {
      QState succ = state;
      succ.active.erase(succ.active.begin() + i);
      finish(std::move(succ), Transition{Transition::Kind::Close, i, false, {}, {}});
    }
  }
}

// Balanced fallback: k pairs (or singletons once points run short) taken in
// canonical order.  Value min(2, n/k); any leftovers stay unused.
inline Solution trivial_partition(const PointSet& ps, int k) {
  const std::vector<int> order = canonical_order(ps);
  const int n = ps.size();
  Solution sol;
  sol.sets.assign(static_cast<std::size_t>(k), {});
  const int pairs = std::min(k, n - k);  // sets that can afford two points
  int next = 0;
  for (int s = 0; s < k; ++s) {
    sol.sets[static_cast<std::size_t>(s)].push_back(order[static_cast<std::size_t>(next++)]);
    if (s < pairs) sol.sets[static_cast<std::size_t>(s)].push_back(order[static_cast<std::size_t>(next++)]);
  }
  for (auto& set : sol.sets) std::sort(set.begin(), set.end());
  sol.value = bottleneck_value(sol.sets);
  return sol;
}

struct ReplayPolygon {
  int t_last = 0;
  std::vector<int> pts;
};

// Rebuild the actual point sets from a transition path.  The replay keeps
// its polygon list sorted by the same key as the sweep (last top vertex), so
// the `poly` indices recorded in transitions stay aligned.
inline std::vector<std::vector<int>> replay_path(
    const std::vector<Transition>& path, const SlabContext& ctx) {
  std::vector<ReplayPolygon> act;
  std::vector<std::vector<int>> done;
  for (int p = 0; p < static_cast<int>(path.size()); ++p) {
    const Transition& tr = path[static_cast<std::size_t>(p)];
    switch (tr.kind) {
      case Transition::Kind::Skip:
        break;
      case Transition::Kind::Open:
        act.push_back(ReplayPolygon{p, {p}});
        break;
      case Transition::Kind::Turn: {
        ReplayPolygon& poly = act[static_cast<std::size_t>(tr.poly)];
        poly.pts.push_back(p);
        if (tr.top_chain) poly.t_last = p;
        break;
      }
      case Transition::Kind::Close: {
        ReplayPolygon& poly = act[static_cast<std::size_t>(tr.poly)];
        poly.pts.push_back(p);
        done.push_back(poly.pts);
        act.erase(act.begin() + tr.poly);
        break;
      }
    }
    std::sort(act.begin(), act.end(),
              [](const ReplayPolygon& a, const ReplayPolygon& b) {
                return a.t_last < b.t_last;
              });
  }
  if (!act.empty()) throw std::logic_error("slab replay left open polygons");
  for (auto& set : done) {
    for (int& v : set) v = ctx.original_index(v);
    std::sort(set.begin(), set.end());
  }
  return done;
}

// One feasibility sweep at the context's target value.  Returns the layered
// state table when some terminal (all k polygons opened and closed) is
// reachable, nothing otherwise.  `keep_all` disables dominance pruning and
// records every predecessor (exact-dedup mode for enumeration).
inline std::optional<std::vector<std::vector<QStored>>> sweep(
    const SlabContext& ctx, bool keep_all) {
  const int n = ctx.n();
  const int k = ctx.k();
  const int v = ctx.target();
  const int mask_bytes = (n + 7) / 8;
  const EdgeMasks em(ctx);

  std::vector<std::vector<QStored>> layers(static_cast<std::size_t>(n) + 1);
  layers[0].push_back(QStored{QState{}, {}, true});

  std::vector<std::pair<QState, Transition>> succs;
  for (int p = 0; p < n; ++p) {
    auto& cur = layers[static_cast<std::size_t>(p)];
    auto& nxt = layers[static_cast<std::size_t>(p) + 1];
    const int remaining = n - 1 - p;  // points strictly after position p
    std::unordered_map<std::string, std::vector<int>> index;
    for (int sid = 0; sid < static_cast<int>(cur.size()); ++sid) {
      if (!cur[static_cast<std::size_t>(sid)].alive) continue;
      q_successors(cur[static_cast<std::size_t>(sid)].state, ctx, em, p, succs);
      for (auto& [succ, trans] : succs) {
        if (supply_needed(succ, k, v) > remaining) continue;
        if (keep_all) {
          const std::string key = full_key(succ, mask_bytes);
          auto [it, inserted] = index.try_emplace(key);
          if (inserted) {
            it->second.push_back(static_cast<int>(nxt.size()));
            nxt.push_back(QStored{std::move(succ), {{sid, trans}}, true});
          } else {
            nxt[static_cast<std::size_t>(it->second.front())].preds.push_back(
                {sid, trans});
          }
          continue;
        }
        auto& bucket = index[signature_key(succ)];
        bool drop = false;
        for (std::size_t bi = 0; bi < bucket.size();) {
          auto& existing = nxt[static_cast<std::size_t>(bucket[bi])];
          const int cmp = compare_profiles(existing.state, succ);
          if (cmp == 2 || cmp == 1) {  // existing at least as good
            drop = true;
            break;
          }
          if (cmp == -1) {  // new strictly dominates existing
            existing.alive = false;
            bucket[bi] = bucket.back();
            bucket.pop_back();
            continue;
          }
          ++bi;
        }
        if (!drop) {
          bucket.push_back(static_cast<int>(nxt.size()));
          nxt.push_back(QStored{std::move(succ), {{sid, trans}}, true});
        }
      }
    }
  }

  for (const auto& stored : layers[static_cast<std::size_t>(n)]) {
    if (stored.alive && stored.state.active.empty() && stored.state.opened == k) {
      return layers;
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Exact solver for k >= 1 disjoint subsets maximizing the smallest size.
// Returns a validated optimal solution; deterministic across runs.  For
// k > n a flagged value-0 solution of k empty sets is returned.  Instances
// beyond 128 points exceed the solver's state encoding (and any realistic
// time budget) and are rejected.
inline Solution solve_slab_dag(const PointSet& ps, int k,
                               const SlabOptions& options = SlabOptions{}) {
  const int n = ps.size();
  if (k < 1) throw std::invalid_argument("solve_slab_dag: k must be >= 1");
  if (n > 128) {
    throw BudgetExceeded(
        "solve_slab_dag: instances beyond 128 points are not supported");
  }
  if (k > n) {
    Solution sol;
    sol.sets.assign(static_cast<std::size_t>(k), {});
    sol.infeasible_k = true;
    return sol;
  }

  Solution best = detail::trivial_partition(ps, k);
  int start = n / k;
  if (options.max_target > 0) start = std::min(start, options.max_target);
  for (int v = start; v >= 3; --v) {
    const SlabContext ctx(ps, k, v);
    auto layers = detail::sweep(ctx, false);
    if (!layers) continue;
    const auto& last = (*layers)[static_cast<std::size_t>(n)];
    int terminal = -1;
    for (int sid = 0; sid < static_cast<int>(last.size()); ++sid) {
      const auto& stored = last[static_cast<std::size_t>(sid)];
      if (stored.alive && stored.state.active.empty() && stored.state.opened == k) {
        terminal = sid;
        break;
      }
    }
    std::vector<Transition> path(static_cast<std::size_t>(n));
    int layer = n, sid = terminal;
    while (layer > 0) {
      const auto& stored =
          (*layers)[static_cast<std::size_t>(layer)][static_cast<std::size_t>(sid)];
      path[static_cast<std::size_t>(layer) - 1] = stored.preds.front().second;
      sid = stored.preds.front().first;
      --layer;
    }
    Solution sol;
    sol.sets = detail::replay_path(path, ctx);
    sol.value = bottleneck_value(sol.sets);
    if (sol.value < v) {
      throw std::logic_error("slab solver value mismatch after replay");
    }
    best = std::move(sol);
    break;
  }
  if (auto err = validate_solution(ps, k, best)) {
    throw std::logic_error("slab solver produced an invalid solution: " + *err);
  }
  return best;
}

// All optimal solutions (as normalized set families), up to `limit`.  Runs
// the sweep at the optimal value without dominance pruning and walks every
// predecessor chain of every terminal state, so it is strictly for small
// instances.
inline std::vector<Solution> enumerate_optimal_solutions(
    const PointSet& ps, int k, std::size_t limit = 1000) {
  const int n = ps.size();
  if (k < 1) throw std::invalid_argument("enumerate_optimal_solutions: k must be >= 1");
  const Solution one = solve_slab_dag(ps, k);
  if (one.infeasible_k || one.value <= 2) {
    // The sweep only enumerates families of >= 3-point polygons; families
    // with value <= 2 are legion and not interesting to enumerate.
    return {one};
  }

  const SlabContext ctx(ps, k, one.value);
  auto layers = detail::sweep(ctx, true);
  if (!layers) {
    throw std::logic_error("optimal enumeration lost the solved value");
  }

  std::set<std::vector<std::vector<int>>> families;
  std::vector<Solution> result;
  std::vector<Transition> path(static_cast<std::size_t>(n));

  // Depth-first over predecessor links, assembling transition paths from the
  // back.  Bounded by `limit` accepted solutions.
  auto walk = [&](auto&& self, int layer, int sid) -> bool {
    if (layer == 0) {
      Solution sol;
      sol.sets = detail::replay_path(path, ctx);
      sol.value = bottleneck_value(sol.sets);
      if (sol.value != one.value) {
        throw std::logic_error("optimal enumeration replayed a non-optimal path");
      }
      normalize_solution(sol);
      if (families.insert(sol.sets).second) {
        result.push_back(std::move(sol));
        if (result.size() >= limit) return false;
      }
      return true;
    }
    const auto& stored =
        (*layers)[static_cast<std::size_t>(layer)][static_cast<std::size_t>(sid)];
    for (const auto& [pred, trans] : stored.preds) {
      path[static_cast<std::size_t>(layer) - 1] = trans;
      if (!self(self, layer - 1, pred)) return false;
    }
    return true;
  };

  const auto& last = (*layers)[static_cast<std::size_t>(n)];
  for (int sid = 0; sid < static_cast<int>(last.size()); ++sid) {
    const detail::QState& st = last[static_cast<std::size_t>(sid)].state;
    if (!st.active.empty() || st.opened != k) continue;
    if (!walk(walk, n, sid)) break;
  }
  for (auto& sol : result) {
    if (auto err = validate_solution(ps, k, sol)) {
      throw std::logic_error("optimal enumeration produced an invalid solution: " + *err);
    }
  }
  return result;
}

}  // namespace bcs
