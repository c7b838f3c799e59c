#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "flexgraph/instance.hpp"

// Brute-force checkers used to validate the polynomial algorithms. They share
// no code with the max-flow or alternating-path routines and are exponential
// in the number of demand types, so they refuse instances above their limits.
namespace flexgraph::oracle {

inline constexpr int kSubsetLimit = 20;

/// Hall's condition over every demand subset: nu(C) <= mu(N(C)).
bool hall_feasible(const ProblemInstance& inst);

/// max { x_e : x in the polytope }, from the Hall constraints of the
/// polytope with t units pre-routed over e. Throws Infeasible, EdgeNotPresent.
Rational max_edge_flow(const ProblemInstance& inst, const Edge& e);

/// True iff every point of the polytope has x_e = 0.
bool is_redundant(const ProblemInstance& inst, const Edge& e);

/// The CRP condition read literally: strict slack nu(C) < mu(N(C)) for every
/// nonempty proper demand subset C. Throws Infeasible.
bool crp_condition_by_subsets(const ProblemInstance& inst);

/// Every matrix the greedy extreme-point construction can produce, over all
/// choice orders (complete bipartite graph). Deduplicated, sorted.
std::vector<Assignment> all_greedy_extreme_points(std::span<const Rational> demand,
                                                  std::span<const Rational> supply);

/// ERP number of (nu, mu, edges), or nullopt when the polytope is empty.
std::optional<int> erp_number(std::span<const Rational> demand, std::span<const Rational> supply,
                              const EdgeSet& edges);

/// Calls `visit` for every subset of `universe` with exactly `size` elements,
/// in lexicographic order; stops early when `visit` returns false.
void for_each_edge_subset(const std::vector<Edge>& universe, int size,
                          const std::function<bool(const EdgeSet&)>& visit);

/// Whether some edge set with exactly `size` edges has ERP number `target`.
bool edge_set_with_erp_exists(std::span<const Rational> demand, std::span<const Rational> supply,
                              int size, int target);

/// Whether some spanning tree of K_{m,n} satisfies the CRP condition.
bool crp_spanning_tree_exists(std::span<const Rational> demand, std::span<const Rational> supply);

}  // namespace flexgraph::oracle
