#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "flexgraph/rational.hpp"

namespace flexgraph {

/// A flexibility edge between demand type `demand` and supply type `supply`.
/// Both indices are 1-based, and the two index spaces are distinct.
struct Edge {
  int demand = 0;
  int supply = 0;

  auto operator<=>(const Edge&) const = default;
};

std::string to_string(const Edge& e);

/// Ordered so that every iteration over edges is deterministic.
using EdgeSet = std::set<Edge>;

/// Demand vector, supply vector and flexibility edges. Construction validates
/// nonnegativity, index ranges, uniqueness and equal totals, so every
/// ProblemInstance in circulation describes a well-formed transportation
/// polytope (which may still be empty).
class ProblemInstance {
 public:
  static ProblemInstance create(std::vector<Rational> demand, std::vector<Rational> supply,
                                std::span<const Edge> edges);
  static ProblemInstance create(std::vector<Rational> demand, std::vector<Rational> supply,
                                const EdgeSet& edges);

  int num_demand() const { return static_cast<int>(demand_.size()); }
  int num_supply() const { return static_cast<int>(supply_.size()); }

  const Rational& demand(int i) const { return demand_.at(static_cast<std::size_t>(i - 1)); }
  const Rational& supply(int j) const { return supply_.at(static_cast<std::size_t>(j - 1)); }
  std::span<const Rational> demands() const { return demand_; }
  std::span<const Rational> supplies() const { return supply_; }
  Rational total() const;

  const EdgeSet& edges() const { return edges_; }
  bool has_edge(const Edge& e) const { return edges_.contains(e); }

  /// Supplies adjacent to demand i, ascending.
  const std::vector<int>& supplies_of(int i) const {
    return demand_adj_.at(static_cast<std::size_t>(i - 1));
  }
  /// Demands adjacent to supply j, ascending.
  const std::vector<int>& demands_of(int j) const {
    return supply_adj_.at(static_cast<std::size_t>(j - 1));
  }

  ProblemInstance with_edges(const EdgeSet& edges) const;
  ProblemInstance with_demand(std::vector<Rational> demand) const;

  friend bool operator==(const ProblemInstance& a, const ProblemInstance& b) {
    return a.demand_ == b.demand_ && a.supply_ == b.supply_ && a.edges_ == b.edges_;
  }

 private:
  ProblemInstance() = default;

  std::vector<Rational> demand_;
  std::vector<Rational> supply_;
  EdgeSet edges_;
  std::vector<std::vector<int>> demand_adj_;
  std::vector<std::vector<int>> supply_adj_;
};

/// A point of the transportation polytope, stored sparsely: only strictly
/// positive entries are kept.
class Assignment {
 public:
  Assignment() = default;

  Rational at(const Edge& e) const;
  /// Sets x_e; a zero value erases the entry. Negative values throw.
  void set(const Edge& e, const Rational& value);
  void add(const Edge& e, const Rational& delta);

  const std::map<Edge, Rational>& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  EdgeSet support() const;

  Rational row_sum(int i) const;
  Rational column_sum(int j) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::map<Edge, Rational> entries_;
};

/// Checks row sums, column sums and support against the instance exactly.
/// Returns a description of the first violation, or nullopt.
std::optional<std::string> assignment_violation(const ProblemInstance& inst, const Assignment& x);

/// B(x): the positive-entry edges and the connected components they induce on
/// the bipartite vertex set. Components are labelled 0..count-1, ordered by
/// smallest demand index; components without demand vertices come last,
/// ordered by smallest supply index.
struct SupportGraph {
  EdgeSet edges;
  std::vector<int> demand_component;  // index i-1
  std::vector<int> supply_component;  // index j-1
  int num_components = 0;

  bool is_forest() const {
    return edges.size() + static_cast<std::size_t>(num_components) ==
           demand_component.size() + supply_component.size();
  }
};

/// Connected components of G(I ∪ J, edges), labelled as in SupportGraph.
SupportGraph connected_components(int num_demand, int num_supply, const EdgeSet& edges);

SupportGraph support_graph(const ProblemInstance& inst, const Assignment& x);

/// Throws NotFeasiblePoint when x is not in the polytope; otherwise true iff
/// the support graph is a forest.
bool is_extreme_point(const ProblemInstance& inst, const Assignment& x);

/// Nonemptiness of the polytope, decided by an exact max-flow.
bool is_feasible(const ProblemInstance& inst);

/// Some point of the polytope, read off an exact max-flow. `variant` permutes
/// the augmenting order deterministically so callers can obtain different
/// points of the same polytope. Throws Infeasible.
Assignment find_feasible_point(const ProblemInstance& inst, unsigned variant = 0);

/// Order in which the greedy extreme-point construction picks (i, j). Listed
/// pairs are consumed first; any remaining work uses the lowest available
/// demand and supply.
struct GreedyOrder {
  std::vector<Edge> choices;
};

/// Northwest-corner style greedy on the complete bipartite graph: repeatedly
/// set x_ij = min(residual demand, residual supply) and retire whichever side
/// is exhausted (both on a tie). Every result is an extreme point.
Assignment greedy_extreme_point(std::span<const Rational> demand, std::span<const Rational> supply,
                                const GreedyOrder& order = {});

/// Largest c with every demand/c and supply/c a nonnegative integer.
Rational gcd_combined(std::span<const Rational> demand, std::span<const Rational> supply);

}  // namespace flexgraph
