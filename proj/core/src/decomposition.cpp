#include "flexgraph/decomposition.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <queue>

#include "flexgraph/error.hpp"

namespace flexgraph {
namespace {

// Supply -> demands with x_ij > 0.
std::vector<std::vector<int>> support_by_supply(const ProblemInstance& inst, const Assignment& x) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(inst.num_supply()));
  for (const auto& [e, v] : x.entries()) {
    adj[static_cast<std::size_t>(e.supply - 1)].push_back(e.demand);
  }
  return adj;
}

std::vector<bool> reachable_mask(const ProblemInstance& inst,
                                 const std::vector<std::vector<int>>& support_adj, int start,
                                 RedundancyWork* work) {
  const auto m = static_cast<std::size_t>(inst.num_demand());
  const auto n = static_cast<std::size_t>(inst.num_supply());
  std::vector<bool> demand_seen(m, false);
  std::vector<bool> supply_seen(n, false);
  std::deque<int> supplies{start};
  supply_seen[static_cast<std::size_t>(start - 1)] = true;
  std::size_t visits = 1;
  std::size_t scans = 0;
  while (!supplies.empty()) {
    const int j = supplies.front();
    supplies.pop_front();
    for (int i : support_adj[static_cast<std::size_t>(j - 1)]) {
      ++scans;
      if (demand_seen[static_cast<std::size_t>(i - 1)]) continue;
      demand_seen[static_cast<std::size_t>(i - 1)] = true;
      ++visits;
      for (int next : inst.supplies_of(i)) {
        ++scans;
        if (supply_seen[static_cast<std::size_t>(next - 1)]) continue;
        supply_seen[static_cast<std::size_t>(next - 1)] = true;
        ++visits;
        supplies.push_back(next);
      }
    }
  }
  if (work != nullptr) {
    work->vertex_visits += visits;
    work->edge_scans += scans;
  }
  return demand_seen;
}

}  // namespace

std::vector<int> alternating_reachable_demands(const ProblemInstance& inst, const Assignment& x,
                                               int start) {
  if (start < 1 || start > inst.num_supply()) {
    throw Error(ErrorCode::IndexOutOfRange, "supply index out of range", std::to_string(start));
  }
  const auto mask = reachable_mask(inst, support_by_supply(inst, x), start, nullptr);
  std::vector<int> out;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.push_back(static_cast<int>(i + 1));
  }
  return out;
}

EdgeSet redundant_edges(const ProblemInstance& inst) {
  return redundant_edges(inst, find_feasible_point(inst));
}

EdgeSet redundant_edges(const ProblemInstance& inst, const Assignment& seed, RedundancyWork* work) {
  if (auto why = assignment_violation(inst, seed)) {
    throw Error(ErrorCode::NotFeasiblePoint, *why);
  }
  const auto support_adj = support_by_supply(inst, seed);
  const auto n = static_cast<std::size_t>(inst.num_supply());
  EdgeSet redundant;
  std::vector<bool> in_neighbourhood(n);
  for (int lambda = 1; lambda <= inst.num_supply(); ++lambda) {
    const auto reached = reachable_mask(inst, support_adj, lambda, work);
    std::fill(in_neighbourhood.begin(), in_neighbourhood.end(), false);
    for (std::size_t i = 0; i < reached.size(); ++i) {
      if (!reached[i]) continue;
      for (int j : inst.supplies_of(static_cast<int>(i + 1))) {
        in_neighbourhood[static_cast<std::size_t>(j - 1)] = true;
      }
    }
    for (const Edge& e : inst.edges()) {
      if (work != nullptr) ++work->edge_scans;
      if (!reached[static_cast<std::size_t>(e.demand - 1)] &&
          in_neighbourhood[static_cast<std::size_t>(e.supply - 1)]) {
        redundant.insert(e);
      }
    }
  }
  return redundant;
}

CrpDecomposition decomposition_from_redundant(const ProblemInstance& inst,
                                              const EdgeSet& redundant) {
  EdgeSet kept;
  std::set_difference(inst.edges().begin(), inst.edges().end(), redundant.begin(), redundant.end(),
                      std::inserter(kept, kept.end()));
  const SupportGraph cc = connected_components(inst.num_demand(), inst.num_supply(), kept);

  CrpDecomposition d;
  d.redundant_edges = redundant;
  d.components.resize(static_cast<std::size_t>(cc.num_components));
  d.demand_component.resize(cc.demand_component.size());
  d.supply_component.resize(cc.supply_component.size());
  for (std::size_t i = 0; i < cc.demand_component.size(); ++i) {
    const int label = cc.demand_component[i];
    d.demand_component[i] = label + 1;
    d.components[static_cast<std::size_t>(label)].demands.push_back(static_cast<int>(i + 1));
  }
  for (std::size_t j = 0; j < cc.supply_component.size(); ++j) {
    const int label = cc.supply_component[j];
    d.supply_component[j] = label + 1;
    d.components[static_cast<std::size_t>(label)].supplies.push_back(static_cast<int>(j + 1));
  }
  for (const Edge& e : kept) {
    d.components[static_cast<std::size_t>(cc.demand_component[static_cast<std::size_t>(
                     e.demand - 1)])]
        .edges.insert(e);
  }
  return d;
}

CrpDecomposition crp_decomposition(const ProblemInstance& inst) {
  return decomposition_from_redundant(inst, redundant_edges(inst));
}

bool crp_condition(const ProblemInstance& inst) {
  const auto redundant = redundant_edges(inst);
  if (!redundant.empty()) return false;
  return connected_components(inst.num_demand(), inst.num_supply(), inst.edges()).num_components ==
         1;
}

CrpDag::CrpDag(int num_vertices, std::vector<CrpDagArc> arcs)
    : num_vertices_(num_vertices),
      arcs_(std::move(arcs)),
      succ_(static_cast<std::size_t>(num_vertices)),
      pred_(static_cast<std::size_t>(num_vertices)) {
  for (const auto& a : arcs_) {
    if (a.from < 1 || a.from > num_vertices || a.to < 1 || a.to > num_vertices) {
      throw Error(ErrorCode::IndexOutOfRange, "arc endpoint outside the component range",
                  std::to_string(a.from) + "->" + std::to_string(a.to));
    }
    succ_[static_cast<std::size_t>(a.from - 1)].push_back(a.to);
    pred_[static_cast<std::size_t>(a.to - 1)].push_back(a.from);
  }
  for (auto* lists : {&succ_, &pred_}) {
    for (auto& l : *lists) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
    }
  }
}

std::vector<int> CrpDag::topological_order() const {
  std::vector<int> indegree(static_cast<std::size_t>(num_vertices_), 0);
  for (int v = 1; v <= num_vertices_; ++v) {
    indegree[static_cast<std::size_t>(v - 1)] = static_cast<int>(predecessors(v).size());
  }
  std::priority_queue<int, std::vector<int>, std::greater<>> ready;
  for (int v = 1; v <= num_vertices_; ++v) {
    if (indegree[static_cast<std::size_t>(v - 1)] == 0) ready.push(v);
  }
  std::vector<int> order;
  while (!ready.empty()) {
    const int v = ready.top();
    ready.pop();
    order.push_back(v);
    for (int w : successors(v)) {
      if (--indegree[static_cast<std::size_t>(w - 1)] == 0) ready.push(w);
    }
  }
  if (static_cast<int>(order.size()) != num_vertices_) return {};
  return order;
}

bool CrpDag::is_acyclic() const {
  return num_vertices_ == 0 || !topological_order().empty();
}

namespace {

std::vector<bool> sweep(int start, int count, const std::vector<std::vector<int>>& adj) {
  std::vector<bool> seen(static_cast<std::size_t>(count) + 1, false);
  std::vector<int> stack{start};
  seen[static_cast<std::size_t>(start)] = true;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<std::size_t>(v - 1)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace

std::vector<bool> CrpDag::descendants(int v) const { return sweep(v, num_vertices_, succ_); }

std::vector<bool> CrpDag::ancestors(int v) const { return sweep(v, num_vertices_, pred_); }

std::vector<int> CrpDag::sinks() const {
  std::vector<int> out;
  for (int v = 1; v <= num_vertices_; ++v) {
    if (successors(v).empty()) out.push_back(v);
  }
  return out;
}

std::vector<int> CrpDag::sources() const {
  std::vector<int> out;
  for (int v = 1; v <= num_vertices_; ++v) {
    if (predecessors(v).empty()) out.push_back(v);
  }
  return out;
}

CrpDag crp_graph(const CrpDecomposition& decomp) {
  std::vector<CrpDagArc> arcs;
  arcs.reserve(decomp.redundant_edges.size());
  for (const Edge& e : decomp.redundant_edges) {
    arcs.push_back({decomp.demand_component[static_cast<std::size_t>(e.demand - 1)],
                    decomp.supply_component[static_cast<std::size_t>(e.supply - 1)], e});
  }
  CrpDag dag(decomp.erp_number(), std::move(arcs));
  if (!dag.is_acyclic()) {
    throw Error(ErrorCode::InvariantViolation, "CRP-graph contains a directed cycle");
  }
  return dag;
}

std::vector<double> SscBasis::project(std::span<const double> q) const {
  std::vector<double> out(q.size(), 0.0);
  for (const auto& v : vectors) {
    double total = 0.0;
    int count = 0;
    for (std::size_t i = 0; i < v.size() && i < q.size(); ++i) {
      if (v[i] != 0) {
        total += q[i];
        ++count;
      }
    }
    if (count == 0) continue;
    const double mean = total / count;
    for (std::size_t i = 0; i < v.size() && i < q.size(); ++i) {
      if (v[i] != 0) out[i] = mean;
    }
  }
  return out;
}

SscBasis ssc_basis(const CrpDecomposition& decomp) {
  SscBasis basis;
  const auto m = decomp.demand_component.size();
  for (const auto& c : decomp.components) {
    std::vector<int> indicator(m, 0);
    for (int i : c.demands) indicator[static_cast<std::size_t>(i - 1)] = 1;
    basis.vectors.push_back(std::move(indicator));
  }
  return basis;
}

ProblemInstance subinstance(const ProblemInstance& inst, std::span<const int> demands,
                            std::span<const int> supplies) {
  std::map<int, int> demand_index;
  std::map<int, int> supply_index;
  std::vector<Rational> nu;
  std::vector<Rational> mu;
  std::vector<int> ds(demands.begin(), demands.end());
  std::vector<int> ss(supplies.begin(), supplies.end());
  std::sort(ds.begin(), ds.end());
  std::sort(ss.begin(), ss.end());
  for (int i : ds) {
    demand_index[i] = static_cast<int>(nu.size()) + 1;
    nu.push_back(inst.demand(i));
  }
  for (int j : ss) {
    supply_index[j] = static_cast<int>(mu.size()) + 1;
    mu.push_back(inst.supply(j));
  }
  EdgeSet edges;
  for (const Edge& e : inst.edges()) {
    auto di = demand_index.find(e.demand);
    auto sj = supply_index.find(e.supply);
    if (di != demand_index.end() && sj != supply_index.end()) {
      edges.insert(Edge{di->second, sj->second});
    }
  }
  return ProblemInstance::create(std::move(nu), std::move(mu), edges);
}

bool verify_decomposition(const ProblemInstance& inst, const std::vector<std::vector<int>>& cover) {
  const int m = inst.num_demand();
  std::vector<int> seen(static_cast<std::size_t>(m), 0);
  for (const auto& part : cover) {
    if (part.empty()) throw Error(ErrorCode::NotAPartition, "empty part in cover");
    for (int i : part) {
      if (i < 1 || i > m) {
        throw Error(ErrorCode::NotAPartition, "demand index out of range", std::to_string(i));
      }
      if (seen[static_cast<std::size_t>(i - 1)]++ > 0) {
        throw Error(ErrorCode::NotAPartition, "demand appears twice", std::to_string(i));
      }
    }
  }
  for (int i = 1; i <= m; ++i) {
    if (seen[static_cast<std::size_t>(i - 1)] == 0) {
      throw Error(ErrorCode::NotAPartition, "demand not covered", std::to_string(i));
    }
  }

  std::vector<bool> claimed(static_cast<std::size_t>(inst.num_supply()), false);
  for (const auto& part : cover) {
    std::vector<int> supplies;
    for (int i : part) {
      for (int j : inst.supplies_of(i)) {
        if (!claimed[static_cast<std::size_t>(j - 1)]) {
          claimed[static_cast<std::size_t>(j - 1)] = true;
          supplies.push_back(j);
        }
      }
    }
    Rational dtot = 0;
    Rational stot = 0;
    for (int i : part) dtot += inst.demand(i);
    for (int j : supplies) stot += inst.supply(j);
    if (dtot != stot) return false;
    const ProblemInstance piece = subinstance(inst, part, supplies);
    if (!is_feasible(piece) || !crp_condition(piece)) return false;
  }
  return std::all_of(claimed.begin(), claimed.end(), [](bool b) { return b; });
}

}  // namespace flexgraph
