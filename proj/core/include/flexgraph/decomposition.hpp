#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "flexgraph/instance.hpp"

namespace flexgraph {

/// One connected component of G(I ∪ J, E \ E_r). Vertex lists are 1-based
/// and ascending.
struct CrpComponent {
  std::vector<int> demands;
  std::vector<int> supplies;
  EdgeSet edges;
};

struct CrpDecomposition {
  EdgeSet redundant_edges;
  /// Ordered by smallest demand index.
  std::vector<CrpComponent> components;
  /// 1-based component id of each demand (index i-1) and supply (index j-1).
  std::vector<int> demand_component;
  std::vector<int> supply_component;

  int erp_number() const { return static_cast<int>(components.size()); }
};

/// Counters describing the work done by the alternating-path search.
struct RedundancyWork {
  std::size_t vertex_visits = 0;
  std::size_t edge_scans = 0;

  std::size_t total() const { return vertex_visits + edge_scans; }
};

/// Edges that carry zero flow in every point of the polytope. Runs one
/// alternating-path search per supply vertex from a single feasible point.
/// Throws Infeasible.
EdgeSet redundant_edges(const ProblemInstance& inst);

/// Same search, seeded by the caller's feasible point. The result does not
/// depend on which point is supplied.
EdgeSet redundant_edges(const ProblemInstance& inst, const Assignment& seed,
                        RedundancyWork* work = nullptr);

/// Demand vertices reachable from supply `start` along paths whose odd edges
/// (supply to demand) lie in the support of `x` and whose even edges
/// (demand to supply) lie in E. Ascending.
std::vector<int> alternating_reachable_demands(const ProblemInstance& inst, const Assignment& x,
                                               int start);

CrpDecomposition crp_decomposition(const ProblemInstance& inst);

/// Decomposition from an already computed redundant set.
CrpDecomposition decomposition_from_redundant(const ProblemInstance& inst, const EdgeSet& redundant);

/// CRP condition via connectivity plus absence of redundant edges.
/// Throws Infeasible.
bool crp_condition(const ProblemInstance& inst);

struct CrpDagArc {
  int from = 0;  // component holding the demand endpoint (1-based)
  int to = 0;    // component holding the supply endpoint (1-based)
  Edge via;      // the redundant edge behind this arc
};

/// Directed graph over CRP components with one arc per redundant edge.
class CrpDag {
 public:
  CrpDag(int num_vertices, std::vector<CrpDagArc> arcs);

  int num_vertices() const { return num_vertices_; }
  const std::vector<CrpDagArc>& arcs() const { return arcs_; }
  /// Distinct successors of v, ascending.
  const std::vector<int>& successors(int v) const {
    return succ_.at(static_cast<std::size_t>(v - 1));
  }
  const std::vector<int>& predecessors(int v) const {
    return pred_.at(static_cast<std::size_t>(v - 1));
  }

  bool is_acyclic() const;
  /// Kahn order, smallest ready vertex first. Empty when cyclic.
  std::vector<int> topological_order() const;
  /// Vertices reachable from v (including v), as a membership mask over 1..d.
  std::vector<bool> descendants(int v) const;
  std::vector<bool> ancestors(int v) const;
  std::vector<int> sinks() const;
  std::vector<int> sources() const;

 private:
  int num_vertices_;
  std::vector<CrpDagArc> arcs_;
  std::vector<std::vector<int>> succ_;
  std::vector<std::vector<int>> pred_;
};

/// Throws InvariantViolation if the arcs form a cycle; that would mean the
/// decomposition is wrong.
CrpDag crp_graph(const CrpDecomposition& decomp);

/// Orthogonal 0/1 basis of the state-space-collapse subspace: one indicator
/// over demand types per CRP component.
struct SscBasis {
  std::vector<std::vector<int>> vectors;

  int dimension() const { return static_cast<int>(vectors.size()); }
  /// Orthogonal projection: every coordinate replaced by its component mean.
  std::vector<double> project(std::span<const double> q) const;
};

SscBasis ssc_basis(const CrpDecomposition& decomp);

/// Builds (I_l, J_l, E_l) from an ordered cover of the demand set: J_l takes
/// the not-yet-claimed neighbours of I_l. True iff every piece, taken alone,
/// is balanced and satisfies the CRP condition and J is exhausted. Throws
/// NotAPartition when `cover` does not partition the demand indices.
bool verify_decomposition(const ProblemInstance& inst, const std::vector<std::vector<int>>& cover);

/// The induced standalone instance on the given vertices, reindexed 1..k in
/// ascending order of the original indices. Throws UnbalancedTotals when the
/// pieces do not balance.
ProblemInstance subinstance(const ProblemInstance& inst, std::span<const int> demands,
                            std::span<const int> supplies);

}  // namespace flexgraph
