#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "bcs/rational.hpp"

namespace bcs {

struct Point {
  Rational x;
  Rational y;
  bool operator==(const Point&) const = default;
};

enum class Orientation { CounterClockwise, Clockwise, Collinear };

// Classification of an ordered point triple (p, q, r) read top-to-bottom.
// Only triples with strictly decreasing y are y-monotone; for those, the
// class says which side of the segment p–r the middle point q falls on:
// LeftFacing  = q strictly on the smaller-x side,
// RightFacing = q strictly on the larger-x side,
// Straight    = all three collinear.
enum class AngleClass { LeftFacing, Straight, RightFacing, NotYMonotone };

// Sign of the cross product (q-p) x (r-p):  +1 counter-clockwise, -1
// clockwise, 0 collinear.  Exact.
inline int orientation_sign(const Point& p, const Point& q, const Point& r) {
  const Rational cross = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
  return cross.sign();
}

inline Orientation orientation(const Point& p, const Point& q, const Point& r) {
  const int s = orientation_sign(p, q, r);
  if (s > 0) return Orientation::CounterClockwise;
  if (s < 0) return Orientation::Clockwise;
  return Orientation::Collinear;
}

// Total order by (x, then y).  Every sweep in the library uses this order; it
// behaves like sorting by x after an infinitesimal shear x + eps*y, which
// leaves orientation signs untouched, so no coordinate perturbation is ever
// applied.
inline bool canonical_less(const Point& a, const Point& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

// A finite set of pairwise distinct points addressed by index.
class PointSet {
 public:
  PointSet() = default;

  explicit PointSet(std::vector<Point> pts) : pts_(std::move(pts)) {
    std::vector<int> idx(pts_.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      return canonical_less(pts_[a], pts_[b]);
    });
    for (std::size_t i = 1; i < idx.size(); ++i) {
      if (pts_[idx[i - 1]] == pts_[idx[i]]) {
        throw std::invalid_argument("PointSet: duplicate point at indices " +
                                    std::to_string(idx[i - 1]) + " and " +
                                    std::to_string(idx[i]));
      }
    }
  }

  int size() const { return static_cast<int>(pts_.size()); }
  bool empty() const { return pts_.empty(); }
  const Point& operator[](int i) const { return pts_[static_cast<std::size_t>(i)]; }
  const std::vector<Point>& points() const { return pts_; }

 private:
  std::vector<Point> pts_;
};

// Indices 0..n-1 sorted by canonical_less.
inline std::vector<int> canonical_order(const PointSet& ps) {
  std::vector<int> order(ps.size());
  for (int i = 0; i < ps.size(); ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return canonical_less(ps[a], ps[b]); });
  return order;
}

inline AngleClass classify_angle(const Point& top, const Point& mid,
                                 const Point& bottom) {
  if (!(top.y > mid.y && mid.y > bottom.y)) return AngleClass::NotYMonotone;
  const int s = orientation_sign(top, bottom, mid);
  if (s == 0) return AngleClass::Straight;
  // A mid on the smaller-x side of the downward top->bottom line (negative
  // orientation sign) classifies as left-facing.
  return s < 0 ? AngleClass::LeftFacing : AngleClass::RightFacing;
}

// Convex hull of the given subset, strict vertices only: points interior to a
// hull edge are dropped.  Result is in counter-clockwise order starting from
// the canonically smallest vertex.  An all-collinear subset yields its two
// extreme points (a single point yields itself).
inline std::vector<int> convex_hull(const PointSet& ps,
                                    const std::vector<int>& subset) {
  std::vector<int> s = subset;
  std::sort(s.begin(), s.end(),
            [&](int a, int b) { return canonical_less(ps[a], ps[b]); });
  const int m = static_cast<int>(s.size());
  if (m <= 2) return s;

  auto build = [&](auto begin, auto end) {
    std::vector<int> chain;
    for (auto it = begin; it != end; ++it) {
      while (chain.size() >= 2 &&
             orientation_sign(ps[chain[chain.size() - 2]], ps[chain.back()],
                              ps[*it]) <= 0) {
        chain.pop_back();
      }
      chain.push_back(*it);
    }
    return chain;
  };

  std::vector<int> lower = build(s.begin(), s.end());
  std::vector<int> upper = build(s.rbegin(), s.rend());
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;
}

inline std::vector<int> convex_hull(const PointSet& ps) {
  std::vector<int> all(ps.size());
  for (int i = 0; i < ps.size(); ++i) all[static_cast<std::size_t>(i)] = i;
  return convex_hull(ps, all);
}

// Strict convex position: every point of the subset admits a closed
// half-plane meeting the subset only in that point.  Equivalently each point
// lies strictly outside the hull of the others; any subset containing three
// collinear points fails.  Subsets of size <= 2 qualify by definition.
//
// Implemented from the definition (per-point test) rather than via a hull
// size comparison, so that the two formulations can check each other.
inline bool is_convex_position(const PointSet& ps,
                               const std::vector<int>& subset) {
  const int m = static_cast<int>(subset.size());
  if (m <= 2) return true;
  std::vector<int> rest;
  rest.reserve(static_cast<std::size_t>(m) - 1);
  for (int skip = 0; skip < m; ++skip) {
    rest.clear();
    for (int j = 0; j < m; ++j) {
      if (j != skip) rest.push_back(subset[static_cast<std::size_t>(j)]);
    }
    const Point& p = ps[subset[static_cast<std::size_t>(skip)]];
    const std::vector<int> hull = convex_hull(ps, rest);
    if (hull.size() == 2) {
      // Degenerate rest: a segment.  p fails only if it sits on it.
      const Point& a = ps[hull[0]];
      const Point& b = ps[hull[1]];
      if (orientation_sign(a, b, p) == 0 && !canonical_less(p, a) &&
          !canonical_less(b, p)) {
        return false;
      }
      continue;
    }
    bool strictly_outside = false;
    for (std::size_t e = 0; e < hull.size(); ++e) {
      const Point& a = ps[hull[e]];
      const Point& b = ps[hull[(e + 1) % hull.size()]];
      if (orientation_sign(a, b, p) < 0) {
        strictly_outside = true;
        break;
      }
    }
    if (!strictly_outside) return false;
  }
  return true;
}

// Weak convex position: every point of the subset lies on the boundary of
// the subset's hull (as a vertex or inside an edge); collinear runs along an
// edge are allowed.  Strict convex position implies weak, not vice versa.
inline bool is_weakly_convex_position(const PointSet& ps,
                                      const std::vector<int>& subset) {
  const int m = static_cast<int>(subset.size());
  if (m <= 2) return true;
  const std::vector<int> hull = convex_hull(ps, subset);
  if (hull.size() == 2) return true;  // all collinear
  for (int idx : subset) {
    const Point& p = ps[idx];
    bool on_boundary = false;
    for (std::size_t e = 0; e < hull.size() && !on_boundary; ++e) {
      const Point& a = ps[hull[e]];
      const Point& b = ps[hull[(e + 1) % hull.size()]];
      if (orientation_sign(a, b, p) != 0) continue;
      // p is on the edge's line; boundary membership needs it between the
      // endpoints (inclusive).
      const bool within_x = !(p.x < std::min(a.x, b.x)) && !(std::max(a.x, b.x) < p.x);
      const bool within_y = !(p.y < std::min(a.y, b.y)) && !(std::max(a.y, b.y) < p.y);
      on_boundary = within_x && within_y;
    }
    if (!on_boundary) return false;
  }
  return true;
}

// Points that are not strict hull vertices (includes points lying on the
// interior of a hull edge).  Sorted ascending.
inline std::vector<int> interior_indices(const PointSet& ps) {
  const std::vector<int> hull = convex_hull(ps);
  std::vector<char> on_hull(static_cast<std::size_t>(ps.size()), 0);
  for (int h : hull) on_hull[static_cast<std::size_t>(h)] = 1;
  std::vector<int> interior;
  for (int i = 0; i < ps.size(); ++i) {
    if (!on_hull[static_cast<std::size_t>(i)]) interior.push_back(i);
  }
  return interior;
}

// Precomputed orientation signs for every ordered triple of a point set.
// Solvers hit orientation tests in their innermost loops; one exact pass up
// front turns those into byte lookups.
class OrientationTable {
 public:
  OrientationTable() = default;

  explicit OrientationTable(const PointSet& ps)
      : n_(ps.size()), signs_(static_cast<std::size_t>(n_) * n_ * n_, 0) {
    for (int i = 0; i < n_; ++i) {
      for (int j = i + 1; j < n_; ++j) {
        for (int l = j + 1; l < n_; ++l) {
          const int8_t s =
              static_cast<int8_t>(orientation_sign(ps[i], ps[j], ps[l]));
          set(i, j, l, s);
          set(j, l, i, s);
          set(l, i, j, s);
          set(i, l, j, static_cast<int8_t>(-s));
          set(l, j, i, static_cast<int8_t>(-s));
          set(j, i, l, static_cast<int8_t>(-s));
        }
      }
    }
  }

  int operator()(int i, int j, int l) const {
    return signs_[(static_cast<std::size_t>(i) * n_ + j) * n_ + l];
  }

 private:
  void set(int i, int j, int l, int8_t s) {
    signs_[(static_cast<std::size_t>(i) * n_ + j) * n_ + l] = s;
  }

  int n_ = 0;
  std::vector<int8_t> signs_;
};

}  // namespace bcs
