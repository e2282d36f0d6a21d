#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "bcs/budget.hpp"
#include "bcs/geometry.hpp"
#include "bcs/solution.hpp"

// Instance generators and the hardness-construction pipeline:
// numerical matching -> angle partition -> bottleneck instance with parabolic
// chains, plus small brute-force deciders used to cross-check each stage.

namespace bcs {

// Three sets of n distinct positive integers with sum(A) + sum(B) = sum(C).
// Asked: n disjoint triples a + b = c covering everything.
struct DnmtsInstance {
  std::vector<long long> A, B, C;
};

// 3n points on the lines y = 0, 1, 2 (n per line).  Layout convention:
// indices [0, n) bottom line y=0, [n, 2n) top line y=2, [2n, 3n) middle line
// y=1.  Asked: a partition into n y-monotone angles, each Straight or
// LeftFacing (one point per line each).
struct AnglePartitionInstance {
  PointSet points;
  int n = 0;
};

struct PointRole {
  enum class Kind { Base, UpperChain, LowerChain };
  Kind kind = Kind::Base;
  int chain = 0;  // 1..n for chain points, 0 for base points

  bool operator==(const PointRole&) const = default;
};

inline std::string to_string(const PointRole& role) {
  switch (role.kind) {
    case PointRole::Kind::Base:
      return "base";
    case PointRole::Kind::UpperChain:
      return "upper:" + std::to_string(role.chain);
    case PointRole::Kind::LowerChain:
      return "lower:" + std::to_string(role.chain);
  }
  return "base";
}

// Bottleneck instance produced from an angle-partition instance: the 3n base
// points plus, for each of the n expected sets, one upper and one lower
// parabolic chain of 2n+2 points far above/below the base strip.  Point
// order: base points first (same indices as the angle-partition instance),
// then upper chains 1..n, then lower chains 1..n.
struct GadgetInstance {
  PointSet points;
  int k = 0;
  Rational delta;
  std::vector<PointRole> roles;
  int delta_escalations = 0;
  bool wedge_verified = false;
};

namespace detail {

// Uniform integer in [0, bound] from raw 64-bit draws, by rejection — the
// standard distributions are implementation-defined, and generated instances
// must be identical everywhere.
inline std::uint64_t draw_uniform(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t range = bound + 1;
  if (range == 0) return gen();  // bound == 2^64-1
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t v = gen();
  while (v >= limit) v = gen();
  return v % range;
}

template <typename T>
void shuffle_portable(std::vector<T>& v, std::mt19937_64& gen) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j =
        static_cast<std::size_t>(draw_uniform(gen, static_cast<std::uint64_t>(i - 1)));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace detail

// n points with integer coordinates in [0, bound]^2, no duplicates; with
// general_position also no three collinear.  Deterministic per seed.
inline PointSet gen_random(int n, std::uint64_t seed, int bound = 100,
                           bool general_position = false) {
  if (n < 0) throw std::invalid_argument("gen_random: n must be >= 0");
  if (bound < 1) throw std::invalid_argument("gen_random: bound must be >= 1");
  std::mt19937_64 gen(seed);
  std::vector<Point> pts;
  long long attempts = 0;
  const long long attempt_cap = 10000LL * (n + 1);
  while (static_cast<int>(pts.size()) < n) {
    if (++attempts > attempt_cap) {
      throw std::runtime_error(
          "gen_random: could not place points (bound too small for n?)");
    }
    Point p{Rational(detail::draw_uniform(gen, static_cast<std::uint64_t>(bound))),
            Rational(detail::draw_uniform(gen, static_cast<std::uint64_t>(bound)))};
    bool ok = true;
    for (const Point& q : pts) {
      if (q == p) {
        ok = false;
        break;
      }
    }
    if (ok && general_position) {
      for (std::size_t i = 0; i + 1 < pts.size() && ok; ++i) {
        for (std::size_t j = i + 1; j < pts.size() && ok; ++j) {
          if (orientation_sign(pts[i], pts[j], p) == 0) ok = false;
        }
      }
    }
    if (ok) pts.push_back(p);
  }
  return PointSet(std::move(pts));
}

// n points in strictly convex position: distinct x's on a parabola, randomly
// translated and presented in shuffled order.
inline PointSet gen_convex_position(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_convex_position: n must be >= 1");
  std::mt19937_64 gen(seed);
  const long long span = 3LL * n + 10;
  std::vector<char> used(static_cast<std::size_t>(2 * span + 1), 0);
  std::vector<long long> xs;
  while (static_cast<int>(xs.size()) < n) {
    const long long x =
        static_cast<long long>(detail::draw_uniform(gen, static_cast<std::uint64_t>(2 * span))) - span;
    if (used[static_cast<std::size_t>(x + span)]) continue;
    used[static_cast<std::size_t>(x + span)] = 1;
    xs.push_back(x);
  }
  const long long dx = static_cast<long long>(detail::draw_uniform(gen, 2000)) - 1000;
  const long long dy = static_cast<long long>(detail::draw_uniform(gen, 2000)) - 1000;
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (long long x : xs) pts.push_back(Point{Rational(x + dx), Rational(x * x + dy)});
  return PointSet(std::move(pts));
}

inline PointSet gen_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("gen_grid: rows and cols must be >= 1");
  }
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) pts.push_back(Point{Rational(c), Rational(r)});
  }
  return PointSet(std::move(pts));
}

inline void check_dnmts(const DnmtsInstance& inst) {
  const std::size_t n = inst.A.size();
  if (inst.B.size() != n || inst.C.size() != n || n == 0) {
    throw std::invalid_argument("dnmts: A, B, C must be non-empty and equally sized");
  }
  long long sum = 0;
  for (const auto* set : {&inst.A, &inst.B, &inst.C}) {
    for (std::size_t i = 0; i < n; ++i) {
      if ((*set)[i] <= 0) throw std::invalid_argument("dnmts: entries must be positive");
      for (std::size_t j = i + 1; j < n; ++j) {
        if ((*set)[i] == (*set)[j]) {
          throw std::invalid_argument("dnmts: entries within a set must be distinct");
        }
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) sum += inst.A[i] + inst.B[i] - inst.C[i];
  if (sum != 0) {
    throw std::invalid_argument("dnmts: sum(A) + sum(B) must equal sum(C)");
  }
}

// Random yes-instance: C is built as a_i + b_sigma(i) for a random matching,
// re-drawn until all c values are distinct.
inline DnmtsInstance gen_dnmts_yes(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_dnmts_yes: n must be >= 1");
  std::mt19937_64 gen(seed);
  auto draw_distinct = [&](int count, long long lo, long long hi) {
    std::vector<long long> out;
    while (static_cast<int>(out.size()) < count) {
      const long long v =
          lo + static_cast<long long>(detail::draw_uniform(
                   gen, static_cast<std::uint64_t>(hi - lo)));
      bool fresh = true;
      for (long long u : out) fresh = fresh && (u != v);
      if (fresh) out.push_back(v);
    }
    return out;
  };
  while (true) {
    DnmtsInstance inst;
    inst.A = draw_distinct(n, 1, 6LL * n + 5);
    inst.B = draw_distinct(n, 1, 6LL * n + 5);
    std::vector<long long> perm(inst.B);
    detail::shuffle_portable(perm, gen);
    inst.C.clear();
    for (int i = 0; i < n; ++i) inst.C.push_back(inst.A[static_cast<std::size_t>(i)] + perm[static_cast<std::size_t>(i)]);
    bool distinct = true;
    for (std::size_t i = 0; i < inst.C.size() && distinct; ++i) {
      for (std::size_t j = i + 1; j < inst.C.size(); ++j) {
        if (inst.C[i] == inst.C[j]) {
          distinct = false;
          break;
        }
      }
    }
    if (!distinct) continue;
    check_dnmts(inst);
    return inst;
  }
}

// First-found complete matching (a, b, c = a + b), triples reported by
// ascending A index; nullopt when none exists.
inline std::optional<std::vector<std::array<long long, 3>>> brute_dnmts(
    const DnmtsInstance& inst, const Budget& budget = Budget{}) {
  check_dnmts(inst);
  const int n = static_cast<int>(inst.A.size());
  if (n > budget.dnmts_max_n) {
    throw BudgetExceeded("brute_dnmts: n=" + std::to_string(n) + " exceeds budget (n<=" +
                         std::to_string(budget.dnmts_max_n) + ")");
  }
  std::vector<char> used_b(static_cast<std::size_t>(n), 0), used_c(static_cast<std::size_t>(n), 0);
  std::vector<std::array<long long, 3>> triples;
  auto dfs = [&](auto&& self, int ai) -> bool {
    if (ai == n) return true;
    for (int bi = 0; bi < n; ++bi) {
      if (used_b[static_cast<std::size_t>(bi)]) continue;
      const long long c = inst.A[static_cast<std::size_t>(ai)] + inst.B[static_cast<std::size_t>(bi)];
      for (int ci = 0; ci < n; ++ci) {
        if (used_c[static_cast<std::size_t>(ci)] || inst.C[static_cast<std::size_t>(ci)] != c) continue;
        used_b[static_cast<std::size_t>(bi)] = used_c[static_cast<std::size_t>(ci)] = 1;
        triples.push_back({inst.A[static_cast<std::size_t>(ai)], inst.B[static_cast<std::size_t>(bi)], c});
        if (self(self, ai + 1)) return true;
        triples.pop_back();
        used_b[static_cast<std::size_t>(bi)] = used_c[static_cast<std::size_t>(ci)] = 0;
      }
    }
    return false;
  };
  if (dfs(dfs, 0)) return triples;
  return std::nullopt;
}

// a -> (2a, 0), b -> (2b, 2), c -> (c, 1): the triple (top b, mid c,
// bottom a) is a Straight angle exactly when a + b = c, and LeftFacing
// exactly when a + b > c.
inline AnglePartitionInstance dnmts_to_angle_partition(const DnmtsInstance& inst) {
  check_dnmts(inst);
  const int n = static_cast<int>(inst.A.size());
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(3 * n));
  for (long long a : inst.A) pts.push_back(Point{Rational(2 * a), Rational(0)});
  for (long long b : inst.B) pts.push_back(Point{Rational(2 * b), Rational(2)});
  for (long long c : inst.C) pts.push_back(Point{Rational(c), Rational(1)});
  return AnglePartitionInstance{PointSet(std::move(pts)), n};
}

inline void check_angle_partition(const AnglePartitionInstance& ap) {
  const int n = ap.n;
  if (n < 1 || ap.points.size() != 3 * n) {
    throw std::invalid_argument("angle partition: expected 3n points");
  }
  for (int i = 0; i < 3 * n; ++i) {
    const Rational expected = i < n ? Rational(0) : (i < 2 * n ? Rational(2) : Rational(1));
    if (ap.points[i].y != expected) {
      throw std::invalid_argument("angle partition: point " + std::to_string(i) +
                                  " is not on its line (layout: n bottom, n top, n middle)");
    }
  }
}

// First-found partition into Straight/LeftFacing angles, as (top, mid,
// bottom) index triples by ascending top index; nullopt when none exists.
inline std::optional<std::vector<std::array<int, 3>>> brute_angle_partition(
    const AnglePartitionInstance& ap, const Budget& budget = Budget{}) {
  check_angle_partition(ap);
  const int n = ap.n;
  if (n > budget.angle_max_n) {
    throw BudgetExceeded("brute_angle_partition: n=" + std::to_string(n) +
                         " exceeds budget (n<=" + std::to_string(budget.angle_max_n) + ")");
  }
  std::vector<char> used_mid(static_cast<std::size_t>(n), 0), used_bot(static_cast<std::size_t>(n), 0);
  std::vector<std::array<int, 3>> triples;
  auto dfs = [&](auto&& self, int ti) -> bool {
    if (ti == n) return true;
    const int top = n + ti;
    for (int mi = 0; mi < n; ++mi) {
      if (used_mid[static_cast<std::size_t>(mi)]) continue;
      for (int bi = 0; bi < n; ++bi) {
        if (used_bot[static_cast<std::size_t>(bi)]) continue;
        const AngleClass cls = classify_angle(ap.points[top], ap.points[2 * n + mi], ap.points[bi]);
        if (cls != AngleClass::Straight && cls != AngleClass::LeftFacing) continue;
        used_mid[static_cast<std::size_t>(mi)] = used_bot[static_cast<std::size_t>(bi)] = 1;
        triples.push_back({top, 2 * n + mi, bi});
        if (self(self, ti + 1)) return true;
        triples.pop_back();
        used_mid[static_cast<std::size_t>(mi)] = used_bot[static_cast<std::size_t>(bi)] = 0;
      }
    }
    return false;
  };
  if (dfs(dfs, 0)) return triples;
  return std::nullopt;
}

namespace detail {

// Chain points of both parabolic chains must lie strictly on the larger-x
// side of every line through two base points on different lines; the line is
// directed downward, so that is its counter-clockwise side.
inline bool gadget_wedges_ok(const PointSet& pts, int base_count, int chain_begin) {
  for (int u = 0; u < base_count; ++u) {
    for (int v = 0; v < base_count; ++v) {
      if (u == v || !(pts[u].y > pts[v].y)) continue;  // u strictly higher
      for (int c = chain_begin; c < pts.size(); ++c) {
        if (orientation_sign(pts[u], pts[v], pts[c]) <= 0) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

namespace detail {

inline GadgetInstance assemble_gadget(const AnglePartitionInstance& ap,
                                      const Rational& delta) {
  const int n = ap.n;
  const int base_count = 3 * n;
  std::vector<Point> pts;
  std::vector<PointRole> roles;
  pts.reserve(static_cast<std::size_t>(base_count + 2 * n * (2 * n + 2)));
  for (int i = 0; i < base_count; ++i) {
    pts.push_back(ap.points[i]);
    roles.push_back(PointRole{PointRole::Kind::Base, 0});
  }
  const Rational d2 = delta * delta;
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j <= 2 * n + 1; ++j) {
      const Rational x = Rational(i) * delta + Rational(j) * delta / Rational(2 * n + 1);
      const Rational off = x - Rational(i) * delta;
      pts.push_back(Point{x, d2 + 3 - off * off});
      roles.push_back(PointRole{PointRole::Kind::UpperChain, i});
    }
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = 0; j <= 2 * n + 1; ++j) {
      const Rational x = Rational(i) * delta + Rational(j) * delta / Rational(2 * n + 1);
      const Rational off = x - Rational(i) * delta;
      pts.push_back(Point{x, -d2 - 1 + off * off});
      roles.push_back(PointRole{PointRole::Kind::LowerChain, i});
    }
  }
  GadgetInstance g;
  g.points = PointSet(std::move(pts));
  g.k = n;
  g.delta = delta;
  g.roles = std::move(roles);
  return g;
}

}  // namespace detail

// Bottleneck instance intended to have optimum 4n+7 exactly when the
// angle-partition instance is solvable.  Far to the right of the base strip,
// each expected set gets an upper chain on y = D^2+3 - (x - iD)^2 and a
// lower chain on y = -D^2-1 + (x - iD)^2, each sampled at 2n+2 x-uniform
// positions across [iD, (i+1)D], with D = t^4 and t the largest base
// x-coordinate (at least 2).
//
// The construction is supposed to keep every chain point strictly on the
// larger-x side of every line through two base points on different lines
// (the wedge property), and the builder escalates D by squaring when the
// verification fails.  The property is in fact unachievable for any D once
// a base line leans: at chain height ~D^2 a line of slope s has moved to
// x ~ D^2/|s|, far beyond the chains' x-range ~(n+1)D, so a positive-slope
// line always excludes the upper-chain tops and a negative-slope line the
// lower-chain bottoms.  Escalation therefore only ever helps degenerate
// (all-vertical) base configurations; otherwise the instance is emitted at
// the base D = t^4 with wedge_verified = false so downstream consumers can
// still use it and report the failure honestly.
inline GadgetInstance angle_partition_to_bcs(const AnglePartitionInstance& ap) {
  check_angle_partition(ap);
  const int base_count = 3 * ap.n;
  Rational t(2);
  for (int i = 0; i < base_count; ++i) {
    if (ap.points[i].x > t) t = ap.points[i].x;
  }
  const Rational base_delta = t * t * t * t;
  Rational delta = base_delta;
  for (int escalation = 0; escalation <= 3; ++escalation) {
    GadgetInstance g = detail::assemble_gadget(ap, delta);
    if (detail::gadget_wedges_ok(g.points, base_count, base_count)) {
      g.delta_escalations = escalation;
      g.wedge_verified = true;
      return g;
    }
    delta = delta * delta;
  }
  GadgetInstance g = detail::assemble_gadget(ap, base_delta);
  g.delta_escalations = 3;
  g.wedge_verified = false;
  return g;
}

// The witness family the construction is designed around: the i-th matching
// triple joined with the i-th upper and lower chains (triples taken by
// ascending top index).  The matching must be a genuine partition into
// Straight/LeftFacing angles; geometric validity of the resulting sets is
// the caller's question, not checked here.
inline Solution build_gadget_witness(const GadgetInstance& g,
                                     std::vector<std::array<int, 3>> matching) {
  const int n = g.k;
  const int base_count = 3 * n;
  if (static_cast<int>(matching.size()) != n) {
    throw InvalidMatching("witness: expected " + std::to_string(n) + " triples");
  }
  std::vector<char> seen(static_cast<std::size_t>(base_count), 0);
  for (const auto& tr : matching) {
    for (int idx : tr) {
      if (idx < 0 || idx >= base_count) throw InvalidMatching("witness: base index out of range");
      if (seen[static_cast<std::size_t>(idx)]) throw InvalidMatching("witness: base point reused");
      seen[static_cast<std::size_t>(idx)] = 1;
    }
    const AngleClass cls = classify_angle(g.points[tr[0]], g.points[tr[1]], g.points[tr[2]]);
    if (cls != AngleClass::Straight && cls != AngleClass::LeftFacing) {
      throw InvalidMatching("witness: triple is not a Straight or LeftFacing angle");
    }
  }
  std::sort(matching.begin(), matching.end());
  Solution sol;
  sol.sets.assign(static_cast<std::size_t>(n), {});
  const int chain_len = 2 * n + 2;
  for (int i = 0; i < n; ++i) {
    auto& set = sol.sets[static_cast<std::size_t>(i)];
    set.insert(set.end(), matching[static_cast<std::size_t>(i)].begin(),
               matching[static_cast<std::size_t>(i)].end());
    const int upper_begin = base_count + i * chain_len;
    const int lower_begin = base_count + n * chain_len + i * chain_len;
    for (int j = 0; j < chain_len; ++j) {
      set.push_back(upper_begin + j);
      set.push_back(lower_begin + j);
    }
    std::sort(set.begin(), set.end());
  }
  sol.value = bottleneck_value(sol.sets);
  return sol;
}

}  // namespace bcs
