#include "flexgraph/augmentation.hpp"

#include <optional>
#include <string>

#include "flexgraph/error.hpp"

namespace flexgraph {

EdgeEffect add_edge_effect(const ProblemInstance& inst, const CrpDecomposition& decomp,
                           const CrpDag& dag, const Edge& edge) {
  if (edge.demand < 1 || edge.demand > inst.num_demand() || edge.supply < 1 ||
      edge.supply > inst.num_supply()) {
    throw Error(ErrorCode::IndexOutOfRange, "edge endpoint out of range", to_string(edge));
  }
  if (inst.has_edge(edge)) {
    throw Error(ErrorCode::EdgeAlreadyPresent, "edge is already in the graph", to_string(edge));
  }
  EdgeEffect effect;
  effect.edge = edge;
  effect.dag_edge = CrpDagArc{decomp.demand_component[static_cast<std::size_t>(edge.demand - 1)],
                              decomp.supply_component[static_cast<std::size_t>(edge.supply - 1)],
                              edge};
  effect.old_erp = decomp.erp_number();

  // D is acyclic, so every cycle the new arc closes uses it exactly once:
  // the merged set is everything downstream of `to` and upstream of `from`.
  const auto below = dag.descendants(effect.dag_edge.to);
  const auto above = dag.ancestors(effect.dag_edge.from);
  for (int v = 1; v <= dag.num_vertices(); ++v) {
    if (below[static_cast<std::size_t>(v)] && above[static_cast<std::size_t>(v)]) {
      effect.cycle_vertices.push_back(v);
    }
  }
  const int merged = static_cast<int>(effect.cycle_vertices.size());
  effect.new_erp = effect.old_erp - (merged > 1 ? merged - 1 : 0);
  effect.delta = effect.new_erp - effect.old_erp;
  return effect;
}

EdgeEffect add_edge_effect(const ProblemInstance& inst, const Edge& edge) {
  const auto decomp = crp_decomposition(inst);
  return add_edge_effect(inst, decomp, crp_graph(decomp), edge);
}

namespace {

bool better(const EdgeEffect& a, const std::optional<EdgeEffect>& best) {
  return !best || a.new_erp < best->new_erp || (a.new_erp == best->new_erp && a.edge < best->edge);
}

}  // namespace

EdgeEffect best_single_edge_exhaustive(const ProblemInstance& inst) {
  const auto decomp = crp_decomposition(inst);
  if (decomp.erp_number() == 1) {
    throw Error(ErrorCode::AlreadyCrp, "instance already satisfies the CRP condition");
  }
  const auto dag = crp_graph(decomp);
  std::optional<EdgeEffect> best;
  for (int i = 1; i <= inst.num_demand(); ++i) {
    for (int j = 1; j <= inst.num_supply(); ++j) {
      if (inst.has_edge(Edge{i, j})) continue;
      auto effect = add_edge_effect(inst, decomp, dag, Edge{i, j});
      if (better(effect, best)) best = std::move(effect);
    }
  }
  if (!best) throw Error(ErrorCode::AlreadyCrp, "no edge left to add");
  return *best;
}

EdgeEffect best_single_edge(const ProblemInstance& inst) {
  const auto decomp = crp_decomposition(inst);
  if (decomp.erp_number() == 1) {
    throw Error(ErrorCode::AlreadyCrp, "instance already satisfies the CRP condition");
  }
  const auto dag = crp_graph(decomp);
  std::optional<EdgeEffect> best;
  for (int sink : dag.sinks()) {
    for (int source : dag.sources()) {
      const auto& from = decomp.components[static_cast<std::size_t>(sink - 1)];
      const auto& to = decomp.components[static_cast<std::size_t>(source - 1)];
      std::optional<Edge> rep;
      for (int i : from.demands) {
        for (int j : to.supplies) {
          if (!inst.has_edge(Edge{i, j})) {
            rep = Edge{i, j};
            break;
          }
        }
        if (rep) break;
      }
      if (!rep) continue;
      auto effect = add_edge_effect(inst, decomp, dag, *rep);
      if (better(effect, best)) best = std::move(effect);
    }
  }
  if (!best) return best_single_edge_exhaustive(inst);
  return *best;
}

}  // namespace flexgraph
