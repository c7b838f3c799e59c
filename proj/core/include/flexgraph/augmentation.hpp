#pragma once

#include <vector>

#include "flexgraph/decomposition.hpp"
#include "flexgraph/instance.hpp"

namespace flexgraph {

/// What adding one edge does to the CRP decomposition.
struct EdgeEffect {
  Edge edge;
  /// The CRP-graph arc the edge would become: component of its demand
  /// endpoint to component of its supply endpoint (1-based).
  CrpDagArc dag_edge;
  /// Components lying on some directed path from dag_edge.to to
  /// dag_edge.from, ascending; empty when no such path exists.
  std::vector<int> cycle_vertices;
  int old_erp = 0;
  int new_erp = 0;
  int delta = 0;  // new_erp - old_erp, never positive
};

/// Effect of E ∪ {edge} computed from reachability in the CRP-graph.
/// Throws IndexOutOfRange, EdgeAlreadyPresent, Infeasible.
EdgeEffect add_edge_effect(const ProblemInstance& inst, const Edge& edge);

/// Same, reusing a decomposition and CRP-graph of `inst`.
EdgeEffect add_edge_effect(const ProblemInstance& inst, const CrpDecomposition& decomp,
                           const CrpDag& dag, const Edge& edge);

/// The single absent edge that lowers the ERP number most. Only sink-to-source
/// component pairs are tried, each through its lexicographically smallest
/// absent edge; ties go to the smaller edge. Throws AlreadyCrp when the ERP
/// number is already 1.
EdgeEffect best_single_edge(const ProblemInstance& inst);

/// Reference version of best_single_edge scanning every absent edge.
EdgeEffect best_single_edge_exhaustive(const ProblemInstance& inst);

}  // namespace flexgraph
