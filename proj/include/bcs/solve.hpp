#pragma once

#include <string>

#include "bcs/brute_force.hpp"
#include "bcs/budget.hpp"
#include "bcs/fpt_flow.hpp"
#include "bcs/largest_convex.hpp"
#include "bcs/slab_dag.hpp"
#include "bcs/solution.hpp"

namespace bcs {

// Picks a strategy from the instance shape.  `used` (when given) receives a
// short label naming the branch taken.
//
//   k > n           -> flagged infeasible answer
//   k == 1          -> convex-chain DP
//   floor(n/k) <= 2 -> balanced partition: floor(n/k) caps the optimum, and
//                      min(2, floor(n/k)) is always achievable
//   few interior    -> flow solver (threshold min(8, budget), configurable)
//   floor(n/k) == 3 -> slab sweep with its count cap at 3
//   otherwise       -> slab sweep
inline Solution solve_auto(const PointSet& ps, int k,
                           const Budget& budget = Budget{},
                           std::string* used = nullptr,
                           int interior_threshold = 8) {
  const int n = ps.size();
  if (k < 1) throw std::invalid_argument("solve_auto: k must be >= 1");
  auto label = [&](const char* name) {
    if (used != nullptr) *used = name;
  };
  if (k > n) {
    label("infeasible");
    Solution sol;
    sol.sets.assign(static_cast<std::size_t>(k), {});
    sol.infeasible_k = true;
    return sol;
  }
  if (k == 1) {
    label("k1");
    return largest_convex_subset(ps);
  }
  if (n / k <= 2) {
    label("trivial");
    Solution sol = detail::trivial_partition(ps, k);
    if (auto err = validate_solution(ps, k, sol)) {
      throw std::logic_error("trivial partition is invalid: " + *err);
    }
    return sol;
  }
  const int threshold = std::min(interior_threshold, budget.fpt_max_r);
  if (static_cast<int>(interior_indices(ps).size()) <= threshold) {
    label("fpt");
    return solve_fpt(ps, k, budget);
  }
  if (n / k == 3) {
    label("slab:cap3");
    SlabOptions opt;
    opt.max_target = 3;
    return solve_slab_dag(ps, k, opt);
  }
  label("slab");
  return solve_slab_dag(ps, k);
}

// CLI-facing dispatch.  Throws std::invalid_argument for unknown names.
inline Solution solve_with_algorithm(const std::string& algorithm,
                                     const PointSet& ps, int k,
                                     const Budget& budget,
                                     std::string* used = nullptr) {
  if (algorithm == "auto") {
    std::string branch;
    Solution sol = solve_auto(ps, k, budget, &branch);
    if (used != nullptr) *used = "auto:" + branch;
    return sol;
  }
  if (used != nullptr) *used = algorithm;
  if (algorithm == "slab") return solve_slab_dag(ps, k);
  if (algorithm == "fpt") return solve_fpt(ps, k, budget);
  if (algorithm == "brute") return brute_force_bottleneck(ps, k, budget);
  if (algorithm == "k1") {
    if (k != 1) {
      throw std::invalid_argument("algorithm 'k1' requires k == 1");
    }
    return largest_convex_subset(ps);
  }
  throw std::invalid_argument("unknown algorithm: " + algorithm);
}

}  // namespace bcs
