#include "flexgraph/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

#include "flexgraph/decomposition.hpp"
#include "flexgraph/error.hpp"
#include "union_find.hpp"

namespace flexgraph::oracle {
namespace {

void check_size(const ProblemInstance& inst) {
  if (inst.num_demand() > kSubsetLimit || inst.num_supply() > 64) {
    throw Error(ErrorCode::SizeLimitExceeded, "subset enumeration limited to 20 demands, 64 supplies",
                std::to_string(inst.num_demand()) + "x" + std::to_string(inst.num_supply()));
  }
}

std::uint64_t neighbourhood(const ProblemInstance& inst, std::uint32_t subset) {
  std::uint64_t mask = 0;
  for (int i = 1; i <= inst.num_demand(); ++i) {
    if ((subset >> (i - 1)) & 1U) {
      for (int j : inst.supplies_of(i)) mask |= std::uint64_t{1} << (j - 1);
    }
  }
  return mask;
}

Rational demand_of(const ProblemInstance& inst, std::uint32_t subset) {
  Rational total = 0;
  for (int i = 1; i <= inst.num_demand(); ++i) {
    if ((subset >> (i - 1)) & 1U) total += inst.demand(i);
  }
  return total;
}

Rational supply_of(const ProblemInstance& inst, std::uint64_t mask) {
  Rational total = 0;
  for (int j = 1; j <= inst.num_supply(); ++j) {
    if ((mask >> (j - 1)) & 1U) total += inst.supply(j);
  }
  return total;
}

}  // namespace

bool hall_feasible(const ProblemInstance& inst) {
  check_size(inst);
  const std::uint32_t count = std::uint32_t{1} << inst.num_demand();
  for (std::uint32_t c = 1; c < count; ++c) {
    if (demand_of(inst, c) > supply_of(inst, neighbourhood(inst, c))) return false;
  }
  return true;
}

Rational max_edge_flow(const ProblemInstance& inst, const Edge& e) {
  if (!inst.has_edge(e)) throw Error(ErrorCode::EdgeNotPresent, "edge not in E", to_string(e));
  if (!hall_feasible(inst)) throw Error(ErrorCode::Infeasible, "transportation polytope is empty");
  Rational best = std::min(inst.demand(e.demand), inst.supply(e.supply));
  const std::uint32_t count = std::uint32_t{1} << inst.num_demand();
  const std::uint64_t j_bit = std::uint64_t{1} << (e.supply - 1);
  const std::uint32_t i_bit = std::uint32_t{1} << (e.demand - 1);
  for (std::uint32_t c = 1; c < count; ++c) {
    if (c & i_bit) continue;
    const auto nb = neighbourhood(inst, c);
    if ((nb & j_bit) == 0) continue;
    const Rational slack = supply_of(inst, nb) - demand_of(inst, c);
    if (slack < best) best = slack;
  }
  return best;
}

bool is_redundant(const ProblemInstance& inst, const Edge& e) {
  return sgn(max_edge_flow(inst, e)) == 0;
}

bool crp_condition_by_subsets(const ProblemInstance& inst) {
  if (!hall_feasible(inst)) throw Error(ErrorCode::Infeasible, "transportation polytope is empty");
  const std::uint32_t count = std::uint32_t{1} << inst.num_demand();
  for (std::uint32_t c = 1; c + 1 < count; ++c) {
    if (!(demand_of(inst, c) < supply_of(inst, neighbourhood(inst, c)))) return false;
  }
  return true;
}

namespace {

void greedy_all(std::vector<Rational>& rd, std::vector<Rational>& rs, std::vector<bool>& dopen,
                std::vector<bool>& sopen, std::map<Edge, Rational>& current,
                std::set<std::vector<std::pair<Edge, Rational>>>& found) {
  bool any = false;
  for (std::size_t i = 0; i < rd.size(); ++i) {
    if (!dopen[i]) continue;
    for (std::size_t j = 0; j < rs.size(); ++j) {
      if (!sopen[j]) continue;
      any = true;
      const Rational a = rd[i];
      const Rational b = rs[j];
      const Rational amount = a < b ? a : b;
      const Edge e{static_cast<int>(i + 1), static_cast<int>(j + 1)};
      if (sgn(amount) > 0) current[e] = amount;
      rd[i] -= amount;
      rs[j] -= amount;
      const bool ci = a <= b;
      const bool cj = a >= b;
      if (ci) dopen[i] = false;
      if (cj) sopen[j] = false;
      greedy_all(rd, rs, dopen, sopen, current, found);
      if (ci) dopen[i] = true;
      if (cj) sopen[j] = true;
      rd[i] = a;
      rs[j] = b;
      current.erase(e);
    }
  }
  if (!any) found.insert(std::vector<std::pair<Edge, Rational>>(current.begin(), current.end()));
}

}  // namespace

std::vector<Assignment> all_greedy_extreme_points(std::span<const Rational> demand,
                                                  std::span<const Rational> supply) {
  std::vector<Rational> rd(demand.begin(), demand.end());
  std::vector<Rational> rs(supply.begin(), supply.end());
  std::vector<bool> dopen(rd.size(), true);
  std::vector<bool> sopen(rs.size(), true);
  std::map<Edge, Rational> current;
  std::set<std::vector<std::pair<Edge, Rational>>> found;
  greedy_all(rd, rs, dopen, sopen, current, found);
  std::vector<Assignment> out;
  for (const auto& entries : found) {
    Assignment x;
    for (const auto& [e, v] : entries) x.set(e, v);
    out.push_back(std::move(x));
  }
  return out;
}

std::optional<int> erp_number(std::span<const Rational> demand, std::span<const Rational> supply,
                              const EdgeSet& edges) {
  const auto inst = ProblemInstance::create(std::vector<Rational>(demand.begin(), demand.end()),
                                            std::vector<Rational>(supply.begin(), supply.end()),
                                            edges);
  if (!hall_feasible(inst)) return std::nullopt;
  EdgeSet kept;
  for (const Edge& e : edges) {
    if (!is_redundant(inst, e)) kept.insert(e);
  }
  return connected_components(inst.num_demand(), inst.num_supply(), kept).num_components;
}

void for_each_edge_subset(const std::vector<Edge>& universe, int size,
                          const std::function<bool(const EdgeSet&)>& visit) {
  const int total = static_cast<int>(universe.size());
  if (size < 0 || size > total) return;
  std::vector<int> pick(static_cast<std::size_t>(size));
  for (int k = 0; k < size; ++k) pick[static_cast<std::size_t>(k)] = k;
  for (;;) {
    EdgeSet s;
    for (int k : pick) s.insert(universe[static_cast<std::size_t>(k)]);
    if (!visit(s)) return;
    int k = size - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == total - size + k) --k;
    if (k < 0) return;
    ++pick[static_cast<std::size_t>(k)];
    for (int r = k + 1; r < size; ++r) {
      pick[static_cast<std::size_t>(r)] = pick[static_cast<std::size_t>(r - 1)] + 1;
    }
  }
}

namespace {

std::vector<Edge> complete_edges(std::size_t m, std::size_t n) {
  std::vector<Edge> all;
  for (std::size_t i = 1; i <= m; ++i) {
    for (std::size_t j = 1; j <= n; ++j) all.push_back(Edge{static_cast<int>(i), static_cast<int>(j)});
  }
  return all;
}

int component_count(std::size_t m, std::size_t n, const EdgeSet& edges) {
  detail::UnionFind uf(static_cast<int>(m + n));
  int count = static_cast<int>(m + n);
  for (const Edge& e : edges) {
    if (uf.unite(e.demand - 1, static_cast<int>(m) + e.supply - 1)) --count;
  }
  return count;
}

}  // namespace

bool edge_set_with_erp_exists(std::span<const Rational> demand, std::span<const Rational> supply,
                              int size, int target) {
  bool found = false;
  for_each_edge_subset(complete_edges(demand.size(), supply.size()), size, [&](const EdgeSet& s) {
    // The ERP number never drops below the number of connected components.
    if (component_count(demand.size(), supply.size(), s) > target) return true;
    if (erp_number(demand, supply, s) == target) found = true;
    return !found;
  });
  return found;
}

bool crp_spanning_tree_exists(std::span<const Rational> demand, std::span<const Rational> supply) {
  const int size = static_cast<int>(demand.size() + supply.size()) - 1;
  bool found = false;
  for_each_edge_subset(complete_edges(demand.size(), supply.size()), size, [&](const EdgeSet& s) {
    if (component_count(demand.size(), supply.size(), s) != 1) return true;
    if (erp_number(demand, supply, s) == 1) found = true;
    return !found;
  });
  return found;
}

}  // namespace flexgraph::oracle
