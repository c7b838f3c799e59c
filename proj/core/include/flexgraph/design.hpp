#pragma once

#include <span>
#include <utility>
#include <vector>

#include "flexgraph/instance.hpp"

namespace flexgraph {

/// Smallest number of connected components an extreme point's support can
/// have on the complete bipartite graph: max{1, m + n - <1,nu> / gcd(nu, mu)}.
/// Rational inputs are rescaled by their combined gcd first.
int min_extreme_components(std::span<const Rational> demand, std::span<const Rational> supply);

/// Partition of demands and supplies into pieces with equal demand and
/// supply totals.
struct BalancedCover {
  /// (demand indices, supply indices), 1-based and ascending within a part;
  /// parts ordered by smallest demand index.
  std::vector<std::pair<std::vector<int>, std::vector<int>>> parts;

  int cardinality() const { return static_cast<int>(parts.size()); }
};

inline constexpr int kCoverVertexLimit = 24;

/// A balanced cover with the largest possible number of parts, by dynamic
/// programming over vertex subsets. Throws SizeLimitExceeded when m + n
/// exceeds `vertex_limit`.
BalancedCover max_balanced_cover(std::span<const Rational> demand, std::span<const Rational> supply,
                                 int vertex_limit = kCoverVertexLimit);

/// The largest achievable ERP number for (nu, mu) over all edge sets.
int max_erp_number(std::span<const Rational> demand, std::span<const Rational> supply);

/// Fewest edges any flexibility graph with ERP number `target` can have:
/// m + n - d, plus one when d is below min_extreme_components.
/// Throws TargetAboveDstarStar.
int min_edges(std::span<const Rational> demand, std::span<const Rational> supply, int target);

struct DesignResult {
  EdgeSet edges;
  Assignment assignment;
  int achieved_erp = 0;
  int edge_count = 0;
  bool used_cycle = false;
};

/// Snapshot after each merge step, for inspection by tests.
struct DesignTrace {
  std::vector<Assignment> iterates;
};

/// Sparsest flexibility graph whose ERP number equals `target`. Seeds an
/// extreme point from a maximum balanced cover, merges components pairwise by
/// swapping flow between two support edges of unequal value, and, when the
/// target is below min_extreme_components, closes the remaining merge with a
/// cycle of half-minimum flows. The returned edges are exactly the support of
/// the returned assignment.
DesignResult design_flexibility(std::span<const Rational> demand, std::span<const Rational> supply,
                                int target, DesignTrace* trace = nullptr);

}  // namespace flexgraph
